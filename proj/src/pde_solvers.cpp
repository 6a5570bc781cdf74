#include "adrctl/pde_solvers.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "adrctl/errors.hpp"

namespace adrctl {

namespace {

void check_level(std::span<const double> level, std::size_t n, const char* what) {
  for (double x : level) {
    if (!std::isfinite(x) || std::abs(x) > kBlowUpThreshold) {
      throw BlowUpError(std::string(what) + " diverged", n);
    }
  }
}

void fill_adjoint_ghosts(const DiscreteProblem& p, AdjointField& adj, std::size_t n) {
  const double mu = p.phys.mu;
  const double closure = mu - p.phys.eps * p.grid.h;
  const auto H = static_cast<std::ptrdiff_t>(p.grid.H);
  adj.at(n, -1) = mu * adj.at(n, 0) / closure;
  adj.at(n, H + 1) = closure * adj.at(n, H) / mu;
}

}  // namespace

StateField solve_state(const DiscreteProblem& p, std::span<const double> y0,
                       const ControlField& v) {
  const auto& g = p.grid;
  if (y0.size() != g.H + 1) throw ShapeError("initial state needs H + 1 values");
  if (!v.fits(g)) throw ShapeError("control field must be (M + 1) x (N + 1)");
  for (double x : y0) {
    if (!std::isfinite(x)) throw ConfigError("initial state must be finite");
  }

  const double mu = p.phys.mu;
  const double eps = p.phys.eps;
  const double h = g.h;
  const double dt = g.dt;
  const double diff = mu / (h * h);
  const double adv = eps / h;
  const auto H = static_cast<std::ptrdiff_t>(g.H);
  const auto nodes = control_indices(g);

  StateField y(g);
  std::copy(y0.begin(), y0.end(), y.interior(0).begin());

  for (std::size_t n = 0; n <= g.N; ++n) {
    y.at(n, -1) = y.at(n, 0) + (h / mu) * v(0, n);
    y.at(n, H + 1) = y.at(n, H) + (h / mu) * v(g.M, n);

    const auto cur = y.row(n);
    auto next = y.interior(n + 1);
    // cur[j + 1] is node j.
    for (std::ptrdiff_t j = 0; j <= H; ++j) {
      const double c = cur[j + 1];
      const double r = cur[j + 2];
      const double l = cur[j];
      next[j] = c + dt * (diff * (r + l - 2.0 * c) - adv * (r - c) + c);
    }
    for (std::size_t k = 1; k < g.M; ++k) next[nodes[k]] += dt * v(k, n) / h;

    check_level(next, n + 1, "state");
  }
  return y;
}

AdjointField solve_adjoint(const DiscreteProblem& p, const StateField& y, AdjointScheme scheme) {
  const auto& g = p.grid;
  if (y.levels() != g.N + 2 || y.H() != g.H) throw ShapeError("state field does not fit grid");
  if (std::abs(p.phys.mu - p.phys.eps * g.h) <= 1e-12 * p.phys.mu) {
    throw ConfigError("mu equals eps * h; the adjoint boundary closure is singular");
  }

  const double dt = g.dt;
  const double k1 = p.phys.k1;
  const double diff = p.phys.mu / (g.h * g.h);
  const double adv = p.phys.eps / g.h;
  const auto H = static_cast<std::ptrdiff_t>(g.H);

  AdjointField adj(g, scheme);
  {
    auto last = adj.interior(g.N);
    const auto yT = y.interior(g.N + 1);
    for (std::size_t j = 0; j < last.size(); ++j) last[j] = p.phys.k2 * yT[j];
  }

  // Coefficients of the state update matrix A (homogeneous part):
  //   A_jj = 1 - 2a + b + dt, A_{j,j+1} = a - b, A_{j,j-1} = a,
  // with the zero-flux ghosts folding the missing neighbour into the diagonal.
  const double a = dt * diff;
  const double b = dt * adv;

  for (std::size_t n = g.N; n >= 1; --n) {
    fill_adjoint_ghosts(p, adj, n);
    const auto cur = adj.row(n);
    const auto yn = y.interior(n);
    auto prev = adj.interior(n - 1);

    if (scheme == AdjointScheme::as_printed) {
      for (std::ptrdiff_t j = 0; j <= H; ++j) {
        const double c = cur[j + 1];
        const double r = cur[j + 2];
        const double l = cur[j];
        prev[j] = c + dt * (diff * (r + l - 2.0 * c) + adv * (r - c) + c + k1 * yn[j]);
      }
    } else {
      for (std::ptrdiff_t j = 0; j <= H; ++j) {
        double diag = 1.0 - 2.0 * a + b + dt;
        if (j == 0) diag += a;
        if (j == H) diag += a - b;
        double acc = diag * cur[j + 1];
        if (j > 0) acc += (a - b) * cur[j];
        if (j < H) acc += a * cur[j + 2];
        prev[j] = acc + dt * k1 * yn[j];
      }
    }
    check_level(prev, n - 1, "adjoint");
  }
  fill_adjoint_ghosts(p, adj, 0);
  return adj;
}

StateField solve_perturbation(const DiscreteProblem& p, const ControlField& dv) {
  const std::vector<double> zero(p.grid.H + 1, 0.0);
  return solve_state(p, zero, dv);
}

}  // namespace adrctl
