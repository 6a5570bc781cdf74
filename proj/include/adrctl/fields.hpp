#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "adrctl/discretization.hpp"

namespace adrctl {

/// Control samples v_k^n for k = 0..M (rows) and n = 0..N (columns).
class ControlField {
public:
  ControlField() = default;
  ControlField(std::size_t controls, std::size_t samples, double fill = 0.0);

  /// Zero controls shaped for the grid: (M + 1) x (N + 1).
  static ControlField zeros(const GridConfig& grid);

  std::size_t controls() const { return controls_; }
  std::size_t samples() const { return samples_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(std::size_t k, std::size_t n) { return data_[k * samples_ + n]; }
  double operator()(std::size_t k, std::size_t n) const { return data_[k * samples_ + n]; }

  /// Time series of control k.
  std::span<const double> signal(std::size_t k) const {
    return {data_.data() + k * samples_, samples_};
  }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  bool same_shape(const ControlField& o) const {
    return controls_ == o.controls_ && samples_ == o.samples_;
  }
  bool fits(const GridConfig& grid) const {
    return controls_ == grid.M + 1 && samples_ == grid.N + 1;
  }
  bool all_finite() const;

  /// this += alpha * x
  ControlField& add_scaled(double alpha, const ControlField& x);
  ControlField& operator+=(const ControlField& o) { return add_scaled(1.0, o); }
  ControlField& operator-=(const ControlField& o) { return add_scaled(-1.0, o); }
  ControlField& operator*=(double s);

  bool operator==(const ControlField&) const = default;

private:
  std::size_t controls_ = 0;
  std::size_t samples_ = 0;
  std::vector<double> data_;
};

ControlField operator+(ControlField a, const ControlField& b);
ControlField operator-(ControlField a, const ControlField& b);
ControlField operator*(double s, ControlField a);

/// Space-time values on nodes j = -1..H+1 (ghosts included) for a range of
/// time levels. Row n holds level n.
class GhostedField {
public:
  GhostedField() = default;
  GhostedField(std::size_t levels, std::size_t H);

  std::size_t levels() const { return levels_; }
  std::size_t H() const { return H_; }

  double& at(std::size_t n, std::ptrdiff_t j) { return data_[offset(n, j)]; }
  double at(std::size_t n, std::ptrdiff_t j) const { return data_[offset(n, j)]; }

  /// Level n including both ghosts (H + 3 entries, index 0 is j = -1).
  std::span<double> row(std::size_t n) { return {data_.data() + n * width(), width()}; }
  std::span<const double> row(std::size_t n) const {
    return {data_.data() + n * width(), width()};
  }
  /// Level n restricted to j = 0..H.
  std::span<const double> interior(std::size_t n) const { return row(n).subspan(1, H_ + 1); }
  std::span<double> interior(std::size_t n) { return row(n).subspan(1, H_ + 1); }

  std::span<const double> values() const { return data_; }
  std::span<double> values() { return data_; }

  bool operator==(const GhostedField&) const = default;

private:
  std::size_t width() const { return H_ + 3; }
  std::size_t offset(std::size_t n, std::ptrdiff_t j) const {
    return n * width() + static_cast<std::size_t>(j + 1);
  }

  std::size_t levels_ = 0;
  std::size_t H_ = 0;
  std::vector<double> data_;
};

/// y_j^n for n = 0..N+1. Ghosts are filled from the controls for n <= N.
class StateField : public GhostedField {
public:
  StateField() = default;
  explicit StateField(const GridConfig& grid) : GhostedField(grid.N + 2, grid.H) {}
  bool operator==(const StateField&) const = default;
};

/// Which backward recursion produced an adjoint field.
enum class AdjointScheme {
  /// Forward advection difference with the flux-closure ghosts
  /// mu (p_0 - p_{-1}) / h + eps p_{-1} = 0 and mu (p_{H+1} - p_H) / h + eps p_H = 0.
  /// Consistent with the continuous adjoint to first order.
  as_printed,
  /// Exact transpose of the explicit state update, so the resulting gradient
  /// is the exact derivative of the discrete cost.
  transpose,
};

/// p_j^n for n = 0..N.
class AdjointField : public GhostedField {
public:
  AdjointField() = default;
  AdjointField(const GridConfig& grid, AdjointScheme s)
      : GhostedField(grid.N + 1, grid.H), scheme(s) {}

  AdjointScheme scheme = AdjointScheme::as_printed;

  bool operator==(const AdjointField&) const = default;
};

}  // namespace adrctl
