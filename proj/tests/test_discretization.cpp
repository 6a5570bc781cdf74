#include <random>

#include "adrctl/discretization.hpp"
#include "adrctl/errors.hpp"
#include "doctest.h"

using namespace adrctl;

TEST_CASE("control indices sit at k H / M") {
  CHECK(control_indices(make_grid(1, 1, 10, 10, 2)) == std::vector<std::size_t>{0, 5, 10});
  CHECK(control_indices(make_grid(1, 1, 10, 12, 3)) == std::vector<std::size_t>{0, 4, 8, 12});
  CHECK(control_indices(make_grid(1, 1, 10, 7, 7)).size() == 8);
}

TEST_CASE("grids with H not a multiple of M are rejected") {
  CHECK_THROWS_AS(make_grid(1, 1, 10, 10, 3), ConfigError);

  GridConfig raw{10, 10, 3, 0.1, 0.1};
  CHECK_THROWS_AS(control_indices(raw), ConfigError);
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(make_grid(1, 1, 0, 10, 2), ConfigError);
  CHECK_THROWS_AS(make_grid(1, 1, 10, 0, 1), ConfigError);
  CHECK_THROWS_AS(make_grid(1, 1, 10, 10, 0), ConfigError);

  GridConfig bad{10, 10, 2, 0.2, 0.1};
  CHECK_THROWS_AS(validate(bad, 1.0, 1.0), ConfigError);

  const auto g = make_grid(2.0, 3.0, 7, 9, 3);
  CHECK(g.dt * 7 == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(g.h * 9 == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("grid construction is deterministic") {
  const auto a = make_grid(1.3, 0.7, 333, 90, 9);
  const auto b = make_grid(1.3, 0.7, 333, 90, 9);
  CHECK(a.dt == b.dt);
  CHECK(a.h == b.h);
}

TEST_CASE("physical constants are validated") {
  PhysicalConfig ok;
  CHECK_NOTHROW(validate(ok));
  for (auto mutate : {+[](PhysicalConfig& c) { c.L = 0; }, +[](PhysicalConfig& c) { c.T = -1; },
                      +[](PhysicalConfig& c) { c.mu = 0; }, +[](PhysicalConfig& c) { c.k0 = 0; },
                      +[](PhysicalConfig& c) { c.k1 = -1; }, +[](PhysicalConfig& c) { c.k2 = -1; }}) {
    PhysicalConfig c;
    mutate(c);
    CHECK_THROWS_AS(validate(c), ConfigError);
  }
}

TEST_CASE("mu == eps h is rejected") {
  PhysicalConfig phys;
  phys.mu = 0.01;
  phys.eps = 1.0;
  CHECK_THROWS_AS(make_problem(phys, make_grid(1, 1, 10, 100, 2)), ConfigError);
  CHECK_NOTHROW(make_problem(phys, make_grid(1, 1, 10, 50, 2)));
}

TEST_CASE("cfl ratio examples") {
  PhysicalConfig phys;
  phys.mu = 0.1;
  phys.eps = 0.1;
  // h = 0.1, dt = 0.01
  CHECK(cfl_ratio(phys, make_grid(1, 1, 100, 10, 1)) == doctest::Approx(0.21).epsilon(1e-13));

  phys.eps = 0.0;
  // h = 0.01, dt = 0.01
  CHECK(cfl_ratio(phys, make_grid(1, 1, 100, 100, 1)) == doctest::Approx(20.0).epsilon(1e-13));

  phys.mu = 1e-300;
  CHECK(cfl_ratio(phys, make_grid(1, 1, 100, 10, 1)) < 1e-290);
}

TEST_CASE("cfl ratio is monotone in dt, mu and h") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    PhysicalConfig phys;
    phys.mu = u(rng);
    phys.eps = u(rng);
    GridConfig g{10, 10, 1, u(rng) * 0.1, u(rng) * 0.1};
    const double base = cfl_ratio(phys, g);

    GridConfig larger_dt = g;
    larger_dt.dt *= 1.5;
    CHECK(cfl_ratio(phys, larger_dt) > base);

    GridConfig larger_h = g;
    larger_h.h *= 1.5;
    CHECK(cfl_ratio(phys, larger_h) < base);

    PhysicalConfig larger_mu = phys;
    larger_mu.mu *= 1.5;
    CHECK(cfl_ratio(larger_mu, g) > base);
  }
}

TEST_CASE("smallest stable N") {
  PhysicalConfig phys;  // defaults
  const std::size_t N = smallest_stable_steps(phys, 100);
  CHECK(cfl_ratio(phys, make_grid(1, 1, N, 100, 2)) <= 0.5);
  CHECK(cfl_ratio(phys, make_grid(1, 1, N - 1, 100, 2)) > 0.5);
  CHECK(N >= 4020);
  CHECK(N <= 4021);
}
