#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace adrctl {

/// Explicit Euler on d phi / dt = lambda e^phi - C, started from the steady
/// state plus a constant offset dphi.
struct ReactionParams {
  double C = 1.0;
  double lambda = 1.0;
  double dphi = 0.1;
  double dt = 1.0;
  std::size_t steps = 11;
  /// When positive, every iterate is rounded to this many significant
  /// decimal digits before the next step, as in a hand calculation that
  /// carries printed values forward. 0 keeps full double precision.
  int significant_digits = 0;
};

struct TrajectoryEntry {
  std::size_t n = 0;
  /// Set when phi_n is representable.
  std::optional<double> phi;
  /// Set instead of phi when e^{phi_{n-1}} overflows: base-10 logarithm of
  /// |phi_n|.
  std::optional<double> log10_magnitude;

  bool overflowed() const { return !phi.has_value(); }
};

/// ln(C / lambda), the root of C - lambda e^phi. Throws ConfigError unless
/// C, lambda > 0.
double steady_state(double C, double lambda);

/// Rounds x to the given number of significant decimal digits (digits <= 0
/// returns x unchanged).
double round_significant(double x, int digits);

/// Entries n = 0..steps. Iteration stops after the first overflow entry.
std::vector<TrajectoryEntry> euler_iterate(const ReactionParams& params);

}  // namespace adrctl
