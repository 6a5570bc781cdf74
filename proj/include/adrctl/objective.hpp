#pragma once

#include "adrctl/discretization.hpp"
#include "adrctl/fields.hpp"

namespace adrctl {

/// The three parts of the discrete cost
///   J = (k0 dt / 2) sum_{k,n} (v_k^n)^2
///     + (k1 dt h / 2) sum_{n=0..N} sum_{j=0..H} (y_j^n)^2
///     + (k2 h / 2) sum_{j=0..H} (y_j^{N+1})^2.
struct CostBreakdown {
  double control_term = 0.0;
  double running_term = 0.0;
  double terminal_term = 0.0;
  double total = 0.0;
};

/// Evaluates J for controls v and their state y. Throws ShapeError.
CostBreakdown cost(const DiscreteProblem& p, const ControlField& v, const StateField& y);

/// dt sum_{k,n} a_k^n b_k^n.
double inner_product(const GridConfig& grid, const ControlField& a, const ControlField& b);

/// Weight applied to the adjoint trace p_{j_k}^n in the gradient. It is 1
/// except for the right boundary control under the transpose scheme, where
/// the ghost coefficient of the state update contributes (mu - eps h) / mu.
double trace_weight(const DiscreteProblem& p, AdjointScheme scheme, std::size_t k);

/// g_k^n = k0 v_k^n + w_k p_{j_k}^n with w_k from trace_weight. The result is
/// the Riesz representative of dJ for inner_product.
ControlField gradient(const DiscreteProblem& p, const ControlField& v, const AdjointField& adj);

/// h-weighted l2 norm of level n over j = 0..H.
double level_norm(const DiscreteProblem& p, const StateField& y, std::size_t n);

}  // namespace adrctl
