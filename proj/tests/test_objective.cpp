#include <random>

#include "adrctl/errors.hpp"
#include "adrctl/objective.hpp"
#include "adrctl/pde_solvers.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace adrctl;
using adrctl::testing::small_problem;

TEST_CASE("cost of zero fields is zero") {
  const auto p = small_problem(10, 10, 2);
  const auto c = cost(p, ControlField::zeros(p.grid), StateField(p.grid));
  CHECK(c.total == 0.0);
  CHECK(c.control_term == 0.0);
}

TEST_CASE("control term of a single sample") {
  PhysicalConfig phys;
  phys.T = 0.5;
  const auto p = make_problem(phys, make_grid(1, 0.5, 1, 2, 1));
  ControlField v = ControlField::zeros(p.grid);
  v(0, 0) = 2.0;
  const auto c = cost(p, v, StateField(p.grid));
  CHECK(c.control_term == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(c.total == c.control_term);
}

TEST_CASE("cost matches a brute-force summation") {
  std::mt19937_64 rng(1);
  PhysicalConfig phys;
  phys.k0 = 1.3;
  phys.k1 = 0.7;
  phys.k2 = 2.1;
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = small_problem(2, 2, 2, phys);
    const auto v = testing::random_controls(rng, p.grid);
    StateField y(p.grid);
    for (double& x : y.values()) x = std::normal_distribution<double>()(rng);
    const auto c = cost(p, v, y);
    CHECK(c.total == doctest::Approx(testing::brute_cost(p, v, y)).epsilon(1e-14));
    CHECK(c.control_term >= 0.0);
    CHECK(c.running_term >= 0.0);
    CHECK(c.terminal_term >= 0.0);
    CHECK(c.total == doctest::Approx(c.control_term + c.running_term + c.terminal_term).epsilon(1e-14));
  }
}

TEST_CASE("cost is quadratic along the solution map") {
  std::mt19937_64 rng(2);
  const auto p = small_problem(50, 10, 5);
  const std::vector<double> zero(11, 0.0);
  const auto v = testing::random_controls(rng, p.grid);
  const double base = cost(p, v, solve_state(p, zero, v)).total;
  for (double alpha : {-3.0, 0.5, 2.0, 7.0}) {
    const auto va = alpha * v;
    const double scaled = cost(p, va, solve_state(p, zero, va)).total;
    CHECK(scaled == doctest::Approx(alpha * alpha * base).epsilon(1e-12));
  }
}

TEST_CASE("inner product") {
  const auto g = make_grid(1, 1, 10, 10, 2);
  std::mt19937_64 rng(3);
  const auto b = testing::random_controls(rng, g);
  CHECK(inner_product(g, ControlField::zeros(g), b) == 0.0);

  ControlField single = ControlField::zeros(g);
  single(1, 4) = 3.0;
  CHECK(inner_product(g, single, single) == doctest::Approx(0.9).epsilon(1e-15));

  for (int trial = 0; trial < 20; ++trial) {
    const auto x = testing::random_controls(rng, g);
    const auto y = testing::random_controls(rng, g);
    const auto z = testing::random_controls(rng, g);
    CHECK(inner_product(g, x, y) == doctest::Approx(inner_product(g, y, x)).epsilon(1e-14));
    CHECK(inner_product(g, x, y + z) ==
          doctest::Approx(inner_product(g, x, y) + inner_product(g, x, z)).epsilon(1e-14).scale(1.0));
    CHECK(inner_product(g, x, x) > 0.0);
  }
  CHECK_THROWS_AS(inner_product(g, ControlField(3, 11), ControlField(3, 10)), ShapeError);
}

TEST_CASE("gradient formula") {
  const auto p = small_problem(4, 4, 2);
  SUBCASE("zero inputs") {
    const auto g = gradient(p, ControlField::zeros(p.grid), AdjointField(p.grid, AdjointScheme::as_printed));
    CHECK(testing::max_abs(g.values()) == 0.0);
  }
  SUBCASE("k0 v + p at the control nodes") {
    ControlField v(3, 5, 1.0);
    AdjointField adj(p.grid, AdjointScheme::as_printed);
    for (std::size_t n = 0; n <= 4; ++n)
      for (std::ptrdiff_t j : {0, 2, 4}) adj.at(n, j) = 2.0;
    const auto g = gradient(p, v, adj);
    for (double x : g.values()) CHECK(x == 3.0);
  }
  SUBCASE("transpose scheme weights the right boundary trace") {
    ControlField v = ControlField::zeros(p.grid);
    AdjointField adj(p.grid, AdjointScheme::transpose);
    for (std::size_t n = 0; n <= 4; ++n)
      for (std::ptrdiff_t j : {0, 2, 4}) adj.at(n, j) = 1.0;
    const auto g = gradient(p, v, adj);
    const double w = (p.phys.mu - p.phys.eps * p.grid.h) / p.phys.mu;
    CHECK(g(0, 0) == 1.0);
    CHECK(g(1, 0) == 1.0);
    CHECK(g(2, 0) == doctest::Approx(w).epsilon(1e-15));
  }
  SUBCASE("shape errors") {
    CHECK_THROWS_AS(gradient(p, ControlField(2, 5), AdjointField(p.grid, AdjointScheme::as_printed)), ShapeError);
  }
}

TEST_CASE("gradient is affine in (v, adjoint)") {
  std::mt19937_64 rng(4);
  const auto p = small_problem(20, 10, 5);
  AdjointField a(p.grid, AdjointScheme::as_printed);
  AdjointField b(p.grid, AdjointScheme::as_printed);
  AdjointField ab(p.grid, AdjointScheme::as_printed);
  std::uniform_int_distribution<int> small(-8, 8);
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    // Dyadic values keep every sum exact.
    a.values()[i] = small(rng) / 4.0;
    b.values()[i] = small(rng) / 4.0;
    ab.values()[i] = a.values()[i] + b.values()[i];
  }
  ControlField vq = ControlField::zeros(p.grid);
  ControlField wq = ControlField::zeros(p.grid);
  for (std::size_t i = 0; i < vq.size(); ++i) {
    vq.values()[i] = small(rng) / 8.0;
    wq.values()[i] = small(rng) / 8.0;
  }
  const auto lhs = gradient(p, vq + wq, ab);
  const auto rhs = gradient(p, vq, a) + gradient(p, wq, b) -
                   gradient(p, ControlField::zeros(p.grid), AdjointField(p.grid, AdjointScheme::as_printed));
  CHECK(lhs == rhs);
}

namespace {

double fd_relative_error(const DiscreteProblem& p, const std::vector<double>& y0, const ControlField& v,
                         const ControlField& dv, AdjointScheme scheme) {
  const auto y = solve_state(p, y0, v);
  const auto g = gradient(p, v, solve_adjoint(p, y, scheme));
  const double directional = inner_product(p.grid, g, dv);
  const double sigma = 1e-5;
  const double fd = (testing::cost_along(p, y0, v + sigma * dv) - testing::cost_along(p, y0, v - sigma * dv)) /
                    (2.0 * sigma);
  return std::abs(directional - fd) / std::abs(fd);
}

}  // namespace

TEST_CASE("transpose-scheme gradient is the exact derivative of the discrete cost") {
  std::mt19937_64 rng(5);
  for (std::size_t M : {1, 2, 5, 10}) {
    PhysicalConfig phys;
    phys.eps = 0.3;
    const auto p = small_problem(60, 10, M, phys);
    const auto y0 = testing::random_vector(rng, 11);
    const auto v = testing::random_controls(rng, p.grid);
    const auto dv = testing::random_controls(rng, p.grid);
    CHECK(fd_relative_error(p, y0, v, dv, AdjointScheme::transpose) < 1e-7);
  }
}

TEST_CASE("printed-scheme gradient agrees with finite differences to first order") {
  std::mt19937_64 rng(6);
  const auto inst = testing::SmoothInstance::draw(rng, 3);
  const auto p = small_problem(50, 10, 2);
  const auto v = inst.controls(p);
  const auto y0 = inst.y0(p);
  const auto g = gradient(p, v, solve_adjoint(p, solve_state(p, y0, v)));
  CHECK(fd_relative_error(p, y0, v, g, AdjointScheme::as_printed) < 5e-2);
}

TEST_CASE("level norm") {
  const auto p = small_problem(10, 4, 2);
  StateField y(p.grid);
  for (std::ptrdiff_t j = 0; j <= 4; ++j) y.at(3, j) = 2.0;
  CHECK(level_norm(p, y, 3) == doctest::Approx(std::sqrt(0.25 * 5 * 4)).epsilon(1e-15));
}
