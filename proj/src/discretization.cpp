#include "adrctl/discretization.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "adrctl/errors.hpp"

namespace adrctl {

namespace {

bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::abs(b);
}

}  // namespace

void validate(const PhysicalConfig& phys) {
  auto finite = [](double x) { return std::isfinite(x); };
  if (!finite(phys.L) || !finite(phys.T) || !finite(phys.mu) || !finite(phys.eps) ||
      !finite(phys.k0) || !finite(phys.k1) || !finite(phys.k2)) {
    throw ConfigError("physical constants must be finite");
  }
  if (!(phys.L > 0.0)) throw ConfigError("L must be positive");
  if (!(phys.T > 0.0)) throw ConfigError("T must be positive");
  if (!(phys.mu > 0.0)) throw ConfigError("mu must be positive");
  if (!(phys.k0 > 0.0)) throw ConfigError("k0 must be positive");
  if (phys.k1 < 0.0) throw ConfigError("k1 must be nonnegative");
  if (phys.k2 < 0.0) throw ConfigError("k2 must be nonnegative");
}

void validate(const GridConfig& grid, double L, double T) {
  if (grid.N < 1) throw ConfigError("N must be at least 1");
  if (grid.H < 1) throw ConfigError("H must be at least 1");
  if (grid.M < 1) throw ConfigError("M must be at least 1");
  if (grid.H % grid.M != 0) {
    throw ConfigError("H = " + std::to_string(grid.H) + " is not a multiple of M = " +
                      std::to_string(grid.M));
  }
  if (!close_rel(grid.dt * static_cast<double>(grid.N), T, 1e-12)) {
    throw ConfigError("dt * N does not reproduce T");
  }
  if (!close_rel(grid.h * static_cast<double>(grid.H), L, 1e-12)) {
    throw ConfigError("h * H does not reproduce L");
  }
}

GridConfig make_grid(double L, double T, std::size_t N, std::size_t H, std::size_t M) {
  GridConfig grid;
  grid.N = N;
  grid.H = H;
  grid.M = M;
  if (N > 0) grid.dt = T / static_cast<double>(N);
  if (H > 0) grid.h = L / static_cast<double>(H);
  validate(grid, L, T);
  return grid;
}

DiscreteProblem make_problem(const PhysicalConfig& phys, const GridConfig& grid) {
  validate(phys);
  validate(grid, phys.L, phys.T);
  if (std::abs(phys.mu - phys.eps * grid.h) <= 1e-12 * phys.mu) {
    throw ConfigError("mu equals eps * h; the adjoint boundary closure is singular");
  }
  return DiscreteProblem{phys, grid};
}

std::vector<std::size_t> control_indices(const GridConfig& grid) {
  if (grid.M < 1 || grid.H % grid.M != 0) {
    throw ConfigError("controls need H to be a positive multiple of M");
  }
  const std::size_t stride = grid.H / grid.M;
  std::vector<std::size_t> idx(grid.M + 1);
  for (std::size_t k = 0; k <= grid.M; ++k) idx[k] = k * stride;
  return idx;
}

double cfl_ratio(const PhysicalConfig& phys, const GridConfig& grid) {
  return grid.dt * (2.0 * phys.mu / (grid.h * grid.h) + std::abs(phys.eps) / grid.h);
}

double cfl_ratio(const DiscreteProblem& p) { return cfl_ratio(p.phys, p.grid); }

std::size_t smallest_stable_steps(const PhysicalConfig& phys, std::size_t H, double target) {
  if (H < 1 || !(target > 0.0)) throw ConfigError("need H >= 1 and a positive target ratio");
  const double h = phys.L / static_cast<double>(H);
  const double rate = 2.0 * phys.mu / (h * h) + std::abs(phys.eps) / h;
  auto ratio = [&](std::size_t n) { return (phys.T / static_cast<double>(n)) * rate; };

  auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(phys.T * rate / target)));
  while (ratio(n) > target) ++n;
  while (n > 1 && ratio(n - 1) <= target) --n;
  return n;
}

}  // namespace adrctl
