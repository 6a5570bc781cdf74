#pragma once

#include <span>

#include "adrctl/discretization.hpp"
#include "adrctl/fields.hpp"

namespace adrctl {

/// Any |y| above this aborts a solve with BlowUpError.
inline constexpr double kBlowUpThreshold = 1e150;

/// Explicit forward-Euler march of the controlled state for n = 0..N.
///
/// Boundary controls enter through the ghost fill
///   y_{-1}^n = y_0^n + (h/mu) v_0^n,   y_{H+1}^n = y_H^n + (h/mu) v_M^n,
/// after which every node j = 0..H takes the same stencil
///   y_j^{n+1} = y_j^n + dt [ mu (y_{j+1} - 2 y_j + y_{j-1}) / h^2
///                            - eps (y_{j+1} - y_j) / h + y_j ].
/// Interior controls k = 1..M-1 are point sources of mass v_k^n at x_k, i.e.
/// dt v_k^n / h is added at node j_k, matching the strength with which the
/// boundary fluxes reach nodes 0 and H.
///
/// Throws ShapeError on mismatched inputs and BlowUpError (with the level
/// index) if the march produces non-finite or runaway values.
StateField solve_state(const DiscreteProblem& p, std::span<const double> y0,
                       const ControlField& v);

/// Backward march of the adjoint from p^N = k2 y^{N+1} with forcing k1 y^n.
/// Ghost columns of every level hold the flux-closure values
/// p_{-1} = mu p_0 / (mu - eps h) and p_{H+1} = (mu - eps h) p_H / mu.
AdjointField solve_adjoint(const DiscreteProblem& p, const StateField& y,
                           AdjointScheme scheme = AdjointScheme::as_printed);

/// Tangent system: the state march from zero initial data driven by dv.
StateField solve_perturbation(const DiscreteProblem& p, const ControlField& dv);

}  // namespace adrctl
