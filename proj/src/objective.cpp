#include "adrctl/objective.hpp"

#include <cmath>

#include "adrctl/errors.hpp"

namespace adrctl {

namespace {

double sum_squares(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x * x;
  return s;
}

void check_state(const GridConfig& g, const StateField& y) {
  if (y.levels() != g.N + 2 || y.H() != g.H) throw ShapeError("state field does not fit grid");
}

}  // namespace

CostBreakdown cost(const DiscreteProblem& p, const ControlField& v, const StateField& y) {
  const auto& g = p.grid;
  if (!v.fits(g)) throw ShapeError("control field must be (M + 1) x (N + 1)");
  check_state(g, y);

  double running = 0.0;
  for (std::size_t n = 0; n <= g.N; ++n) running += sum_squares(y.interior(n));

  CostBreakdown c;
  c.control_term = 0.5 * p.phys.k0 * g.dt * sum_squares(v.values());
  c.running_term = 0.5 * p.phys.k1 * g.dt * g.h * running;
  c.terminal_term = 0.5 * p.phys.k2 * g.h * sum_squares(y.interior(g.N + 1));
  c.total = c.control_term + c.running_term + c.terminal_term;
  return c;
}

double inner_product(const GridConfig& grid, const ControlField& a, const ControlField& b) {
  if (!a.same_shape(b)) throw ShapeError("control fields differ in shape");
  const auto av = a.values();
  const auto bv = b.values();
  double s = 0.0;
  for (std::size_t i = 0; i < av.size(); ++i) s += av[i] * bv[i];
  return grid.dt * s;
}

double trace_weight(const DiscreteProblem& p, AdjointScheme scheme, std::size_t k) {
  if (scheme == AdjointScheme::transpose && k == p.grid.M) {
    return (p.phys.mu - p.phys.eps * p.grid.h) / p.phys.mu;
  }
  return 1.0;
}

ControlField gradient(const DiscreteProblem& p, const ControlField& v, const AdjointField& adj) {
  const auto& g = p.grid;
  if (!v.fits(g)) throw ShapeError("control field must be (M + 1) x (N + 1)");
  if (adj.levels() != g.N + 1 || adj.H() != g.H) throw ShapeError("adjoint field does not fit grid");

  const auto nodes = control_indices(g);
  ControlField out(g.M + 1, g.N + 1);
  for (std::size_t k = 0; k <= g.M; ++k) {
    const double w = trace_weight(p, adj.scheme, k);
    const auto j = static_cast<std::ptrdiff_t>(nodes[k]);
    for (std::size_t n = 0; n <= g.N; ++n) out(k, n) = p.phys.k0 * v(k, n) + w * adj.at(n, j);
  }
  return out;
}

double level_norm(const DiscreteProblem& p, const StateField& y, std::size_t n) {
  return std::sqrt(p.grid.h * sum_squares(y.interior(n)));
}

}  // namespace adrctl
