#pragma once

#include <cstddef>
#include <vector>

namespace adrctl {

/// Physical constants of the controlled advection-diffusion-reaction problem
/// y_t - mu y_xx + eps y_x - y = sources on (0, L) x (0, T), plus the weights
/// of the quadratic cost (k0 on controls, k1 on the state over the whole
/// space-time domain, k2 on the final state).
struct PhysicalConfig {
  double L = 1.0;
  double T = 1.0;
  double mu = 0.1;
  double eps = 0.1;
  double k0 = 1.0;
  double k1 = 1.0;
  double k2 = 1.0;
};

/// Uniform space-time grid. N time steps of size dt, H space intervals of
/// size h, and M control intervals (M + 1 control locations x_k = L k / M).
struct GridConfig {
  std::size_t N = 0;
  std::size_t H = 0;
  std::size_t M = 0;
  double dt = 0.0;
  double h = 0.0;
};

struct DiscreteProblem {
  PhysicalConfig phys;
  GridConfig grid;

  /// Number of stored control samples per control signal (N + 1).
  std::size_t time_samples() const { return grid.N + 1; }
  /// Number of grid nodes without ghosts (H + 1).
  std::size_t nodes() const { return grid.H + 1; }
};

/// Throws ConfigError unless L, T, mu > 0, k0 > 0 and k1, k2 >= 0.
void validate(const PhysicalConfig& phys);

/// Throws ConfigError on zero counts, H not a multiple of M, or steps that
/// are inconsistent with (L, T).
void validate(const GridConfig& grid, double L, double T);

/// Builds a grid with dt = T / N and h = L / H. Deterministic in its inputs.
GridConfig make_grid(double L, double T, std::size_t N, std::size_t H, std::size_t M);

/// Validates both parts and rejects mu == eps h, where the left adjoint
/// ghost closure p_{-1} = mu p_0 / (mu - eps h) is singular.
DiscreteProblem make_problem(const PhysicalConfig& phys, const GridConfig& grid);

/// Node indices j_k = k H / M of the control locations, k = 0..M.
std::vector<std::size_t> control_indices(const GridConfig& grid);

/// dt (2 mu / h^2 + |eps| / h). Values above 1 indicate the explicit scheme
/// is likely unstable.
double cfl_ratio(const DiscreteProblem& p);
double cfl_ratio(const PhysicalConfig& phys, const GridConfig& grid);

/// Smallest N >= 1 with cfl_ratio <= target on H space intervals.
std::size_t smallest_stable_steps(const PhysicalConfig& phys, std::size_t H, double target = 0.5);

}  // namespace adrctl
