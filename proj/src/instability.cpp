#include "adrctl/instability.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>

#include "adrctl/errors.hpp"

namespace adrctl {

double steady_state(double C, double lambda) {
  if (!(C > 0.0) || !(lambda > 0.0)) throw ConfigError("C and lambda must be positive");
  return std::log(C / lambda);
}

double round_significant(double x, int digits) {
  if (digits <= 0 || x == 0.0 || !std::isfinite(x)) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);
  return std::strtod(buf, nullptr);
}

std::vector<TrajectoryEntry> euler_iterate(const ReactionParams& params) {
  if (!(params.dt > 0.0)) throw ConfigError("dt must be positive");
  if (params.significant_digits < 0 || params.significant_digits > 17) {
    throw ConfigError("significant_digits must lie in [0, 17]");
  }
  const int digits = params.significant_digits;
  double phi = round_significant(steady_state(params.C, params.lambda) + params.dphi, digits);

  std::vector<TrajectoryEntry> out;
  out.push_back({0, phi, std::nullopt});
  for (std::size_t n = 1; n <= params.steps; ++n) {
    const double growth = std::exp(phi);
    const double next = phi + params.dt * (params.lambda * growth - params.C);
    if (!std::isfinite(growth) || !std::isfinite(next)) {
      // |phi_n| ~ dt lambda e^{phi_{n-1}} once the exponential dominates.
      const double log10_mag =
          std::log10(params.dt * params.lambda) + phi * std::numbers::log10e;
      out.push_back({n, std::nullopt, log10_mag});
      break;
    }
    phi = round_significant(next, digits);
    out.push_back({n, phi, std::nullopt});
  }
  return out;
}

}  // namespace adrctl
