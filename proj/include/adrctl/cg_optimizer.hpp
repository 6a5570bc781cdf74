#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "adrctl/discretization.hpp"
#include "adrctl/fields.hpp"
#include "adrctl/objective.hpp"

namespace adrctl {

struct CGConfig {
  /// Stop once <g, g> / <g0, g0> < tol^2.
  double tol = 1e-6;
  /// 0 selects 3 (M + 1) (N + 1).
  std::size_t max_iter = 0;
  /// Adjoint used for the gradient and the Hessian products.
  AdjointScheme adjoint = AdjointScheme::transpose;
};

enum class CGStatus { converged, max_iter_reached, trivial_optimum };

std::string to_string(CGStatus s);

/// Throws ConfigError unless 0 < tol < 1.
void validate(const CGConfig& cfg);

/// Iteration cap actually used for a grid.
std::size_t effective_max_iter(const CGConfig& cfg, const GridConfig& grid);

/// One record per iterate u^0, u^1, ... (so both histories have
/// iterations + 1 entries).
struct CGReport {
  std::size_t iterations = 0;
  std::vector<CostBreakdown> cost_history;
  std::vector<double> grad_ratio_history;
  CGStatus status = CGStatus::max_iter_reached;
};

struct CGResult {
  ControlField control;
  CGReport report;
};

/// Quantities of iteration m, passed to an optional observer.
struct CGStep {
  std::size_t m;
  const ControlField& u;       // u^m
  const ControlField& w;       // search direction w^m
  const ControlField& g;       // g^m
  const ControlField& g_bar;   // Hessian applied to w^m
  double rho;
  const ControlField& u_next;  // u^{m+1}
  const ControlField& g_next;  // g^{m+1}
};

using CGObserver = std::function<void(const CGStep&)>;

/// Hessian-vector product of the discrete cost: k0 w + trace of the adjoint
/// of the tangent trajectory driven by w.
ControlField apply_hessian(const DiscreteProblem& p, const ControlField& w, AdjointScheme scheme);

/// Conjugate-gradient minimisation of the discrete cost starting from zero
/// controls. Each iteration runs one tangent solve and one adjoint solve and
/// takes the exact line-search step rho = <g, g> / <Hw, w>.
///
/// Throws NotPositiveDefiniteError if <Hw, w> <= 0, and propagates
/// BlowUpError from the solvers.
CGResult cg_solve(const DiscreteProblem& p, std::span<const double> y0, const CGConfig& cfg,
                  const CGObserver& observer = {});

}  // namespace adrctl
