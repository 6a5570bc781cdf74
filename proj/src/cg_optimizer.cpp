#include "adrctl/cg_optimizer.hpp"

#include <vector>

#include "adrctl/errors.hpp"
#include "adrctl/pde_solvers.hpp"

namespace adrctl {

std::string to_string(CGStatus s) {
  switch (s) {
    case CGStatus::converged:
      return "converged";
    case CGStatus::max_iter_reached:
      return "max_iter_reached";
    case CGStatus::trivial_optimum:
      return "trivial_optimum";
  }
  return "unknown";
}

void validate(const CGConfig& cfg) {
  if (!(cfg.tol > 0.0 && cfg.tol < 1.0)) throw ConfigError("tol must lie in (0, 1)");
}

std::size_t effective_max_iter(const CGConfig& cfg, const GridConfig& grid) {
  return cfg.max_iter > 0 ? cfg.max_iter : 3 * (grid.M + 1) * (grid.N + 1);
}

ControlField apply_hessian(const DiscreteProblem& p, const ControlField& w, AdjointScheme scheme) {
  const StateField dy = solve_perturbation(p, w);
  return gradient(p, w, solve_adjoint(p, dy, scheme));
}

CGResult cg_solve(const DiscreteProblem& p, std::span<const double> y0, const CGConfig& cfg,
                  const CGObserver& observer) {
  validate(cfg);
  const auto& grid = p.grid;
  const std::size_t max_iter = effective_max_iter(cfg, grid);
  const double tol2 = cfg.tol * cfg.tol;

  CGResult res{ControlField::zeros(grid), {}};
  CGReport& rep = res.report;
  ControlField& u = res.control;

  StateField y = solve_state(p, y0, u);
  ControlField g = gradient(p, u, solve_adjoint(p, y, cfg.adjoint));
  const double g0 = inner_product(grid, g, g);

  rep.cost_history.push_back(cost(p, u, y));
  rep.grad_ratio_history.push_back(g0 > 0.0 ? 1.0 : 0.0);
  if (g0 == 0.0) {
    rep.status = CGStatus::trivial_optimum;
    return res;
  }

  ControlField w = g;
  double gg = g0;

  for (std::size_t m = 0; m < max_iter; ++m) {
    const StateField dy = solve_perturbation(p, w);
    const ControlField g_bar = gradient(p, w, solve_adjoint(p, dy, cfg.adjoint));
    const double curvature = inner_product(grid, g_bar, w);
    if (!(curvature > 0.0)) {
      throw NotPositiveDefiniteError("search direction has nonpositive curvature", m);
    }
    const double rho = gg / curvature;

    ControlField u_next = u;
    u_next.add_scaled(-rho, w);
    ControlField g_next = g;
    g_next.add_scaled(-rho, g_bar);

    // The state is affine in the controls, so y(u - rho w) = y(u) - rho dy(w).
    {
      auto yv = y.values();
      const auto dv = dy.values();
      for (std::size_t i = 0; i < yv.size(); ++i) yv[i] -= rho * dv[i];
    }

    if (observer) observer(CGStep{m, u, w, g, g_bar, rho, u_next, g_next});

    u = std::move(u_next);
    g = std::move(g_next);
    const double gg_next = inner_product(grid, g, g);

    rep.iterations = m + 1;
    rep.cost_history.push_back(cost(p, u, y));
    rep.grad_ratio_history.push_back(gg_next / g0);

    if (gg_next / g0 < tol2) {
      rep.status = CGStatus::converged;
      return res;
    }

    const double gamma = gg_next / gg;
    ControlField w_next = g;
    w_next.add_scaled(gamma, w);
    w = std::move(w_next);
    gg = gg_next;
  }
  rep.status = CGStatus::max_iter_reached;
  return res;
}

}  // namespace adrctl
