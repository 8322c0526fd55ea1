#include "doctest.h"

#include <cmath>

#include "zk/errors.hpp"
#include "zk/norms.hpp"
#include "zk/randomize.hpp"
#include "zk/rng.hpp"
#include "zk/solver.hpp"

using namespace zk;

TEST_CASE("window profile") {
  CHECK(chi0(0) == doctest::Approx(1));
  CHECK(chi0(1) == 0);
  CHECK(chi0(-1.5) == 0);
  CHECK(chi0(0.5) == doctest::Approx(0.5));
  for (double x = 0; x <= 1; x += 0.01) {
    CHECK(chi0(x) == doctest::Approx(chi0(-x)));
    CHECK(chi0(x) + chi0(x - 1) == doctest::Approx(1));  // partition of unity
  }
}

TEST_CASE("parameters and projections") {
  CHECK_THROWS_AS((RandomizationParams{0.4, 1, 8}.validate()), PreconditionError);
  CHECK_THROWS_AS((RandomizationParams{0.97, 1, 2}.validate()), PreconditionError);
  FrequencyGrid g(6.0, 24, 6);
  auto u = generic_profile(g, 0.97);
  CHECK_THROWS_AS(project_pk(u, {0, 9}), PreconditionError);
  // the projections add back up to u where the lattice covers xi
  auto pts = lattice_points(g, 8);
  SpectralField s(g);
  for (auto k : pts) s += project_pk(u, k);
  double d = 0;
  for (int j = 0; j < g.n_x1; ++j)
    if (std::abs(g.xi(j)) <= 5)
      for (int n = -g.k_max; n <= g.k_max; ++n) d = std::max(d, std::abs(s.at(j, n) - u.at(j, n)));
  CHECK(d < 1e-12);
}

TEST_CASE("randomized data is real and reproducible") {
  FrequencyGrid g(6.0, 24, 6);
  auto u = generic_profile(g, 0.97);
  RandomizationParams p{0.97, 42, 8};
  auto a = randomize_data(u, p), b = randomize_data(u, p);
  CHECK(a.real_valued);
  CHECK(conjugate_symmetry_defect(a) < 1e-14);
  CHECK(a.coeffs == b.coeffs);
  p.seed = 43;
  CHECK(randomize_data(u, p).coeffs != a.coeffs);
}

TEST_CASE("mean squared norm matches the analytic sum") {
  FrequencyGrid g(6.0, 24, 6);
  auto u = generic_profile(g, 0.97);
  double s = 0.97 - 1 - 0.1;
  double want = expected_hs_norm_sq(u, s, 8);
  double got = 0;
  int seeds = 200;
  for (int i = 0; i < seeds; ++i) got += std::pow(sobolev_norm(randomize_data(u, {0.97, std::uint64_t(i), 8}), s), 2);
  CHECK(got / seeds == doctest::Approx(want).epsilon(0.1));
}

TEST_CASE("first Picard remainder: trapezoid against exact phases") {
  FrequencyGrid g(2.0, 8, 2);
  auto u = randomize_data(generic_profile(g, 0.97), {0.97, 3, 4});
  auto ex = first_picard_endpoint_exact(u, 0.05);
  auto tr = first_picard_remainder(u, 0.05, 401);
  double a = sobolev_norm(ex, 0), b = sobolev_norm(tr.endpoint, 0);
  CHECK(a > 0);
  CHECK(b == doctest::Approx(a).epsilon(0.02));
}

TEST_CASE("exact-phase remainder equals the solver's first Picard iterate minus the free flow") {
  // data inside half the band, so the solver's truncated product loses nothing
  FrequencyGrid g(4.0, 32, 4);
  Rng rng(12);
  SpectralField u(g);
  for (int j = 0; j < g.n_x1; ++j)
    for (int n = -2; n <= 2; ++n)
      if (std::abs(g.xi(j)) <= 1.5) u.at(j, n) = rng.complex_normal();
  u = make_real(u);
  double T = 0.05;
  auto tr = picard_solve(u, T, T / 4096, 1, 1e300);
  auto v = tr.states.back() - propagate_linear(u, T);
  auto ex = first_picard_endpoint_exact(u, T);
  double d = 0, s = 0;
  for (int j = 0; j < g.n_x1; ++j)
    for (int n = -g.k_max; n <= g.k_max; ++n) {
      int jj = ex.grid.column_of(g.xi(j));
      REQUIRE(jj >= 0);
      d = std::max(d, std::abs(v.at(j, n) - ex.at(jj, n)));
      s = std::max(s, std::abs(ex.at(jj, n)));
    }
  CHECK(s > 0);
  CHECK(d / s < 1e-6);
}
