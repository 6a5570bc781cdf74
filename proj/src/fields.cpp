#include "adrctl/fields.hpp"

#include <algorithm>
#include <cmath>

#include "adrctl/errors.hpp"

namespace adrctl {

ControlField::ControlField(std::size_t controls, std::size_t samples, double fill)
    : controls_(controls), samples_(samples), data_(controls * samples, fill) {}

ControlField ControlField::zeros(const GridConfig& grid) {
  return ControlField(grid.M + 1, grid.N + 1);
}

bool ControlField::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); });
}

ControlField& ControlField::add_scaled(double alpha, const ControlField& x) {
  if (!same_shape(x)) throw ShapeError("control fields differ in shape");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += alpha * x.data_[i];
  return *this;
}

ControlField& ControlField::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

ControlField operator+(ControlField a, const ControlField& b) { return a += b; }
ControlField operator-(ControlField a, const ControlField& b) { return a -= b; }
ControlField operator*(double s, ControlField a) { return a *= s; }

GhostedField::GhostedField(std::size_t levels, std::size_t H)
    : levels_(levels), H_(H), data_(levels * (H + 3), 0.0) {}

}  // namespace adrctl
