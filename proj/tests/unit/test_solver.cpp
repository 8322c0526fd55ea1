#include "doctest.h"

#include <cmath>
#include <sstream>

#include "zk/errors.hpp"
#include "zk/norms.hpp"
#include "zk/solver.hpp"

using namespace zk;

namespace {

double rel(const SpectralField& a, const SpectralField& b) { return h1_norm(a - b) / h1_norm(b); }

FrequencyGrid small_grid() { return FrequencyGrid(4.0, 32, 6); }

}  // namespace

TEST_CASE("Gaussian data is real") {
  auto u = gaussian_data(small_grid(), 0.1);
  CHECK(u.real_valued);
  CHECK(conjugate_symmetry_defect(u) < 1e-14);
  CHECK(mass(u) > 0);
}

TEST_CASE("step size and real flag are checked") {
  auto g = small_grid();
  auto u = gaussian_data(g, 0.1);
  CHECK_THROWS_AS(picard_solve(u, 0.1, 2 * max_stable_step(g), 30, 1e-12), PreconditionError);
  SpectralField c(g, false);
  CHECK_THROWS_AS(picard_solve(c, 0.1, max_stable_step(g), 30, 1e-12), PreconditionError);
}

TEST_CASE("linear flow when no iterations are asked for") {
  auto g = small_grid();
  auto u = gaussian_data(g, 0.1);
  double T = 0.05;
  auto tr = picard_solve(u, T, T / 64, 0, 1e-12);
  CHECK(rel(tr.states.back(), propagate_linear(u, T)) < 1e-13);
}

TEST_CASE("Picard agrees with RK4 and conserves") {
  auto g = small_grid();
  auto u = gaussian_data(g, 0.5);
  double T = 0.05, dt = std::min(T / 256, max_stable_step(g));
  int steps = static_cast<int>(std::ceil(T / dt));
  dt = T / steps;
  auto p = picard_solve(u, T, dt, 60, 1e-13);
  auto r = rk4_solve(u, T, dt, steps);
  CHECK(rel(p.states.back(), r.states.back()) < 1e-6);
  auto rep = conserved_report(p);
  CHECK(rep.mass_drift < 1e-6);
  CHECK(rep.line_mass_drift < 1e-8);
  std::ostringstream os;
  write_conserved_csv(os, p);
  CHECK(os.str().rfind("time,mass,energy,line_mass_drift\n", 0) == 0);
}

TEST_CASE("non-convergence is reported") {
  auto g = small_grid();
  auto u = gaussian_data(g, 50.0);
  CHECK_THROWS_AS(picard_solve(u, 0.05, max_stable_step(g), 3, 1e-14), NumericalFailure);
}

TEST_CASE("time reversal") {
  auto g = small_grid();
  auto u = gaussian_data(g, 0.5);
  double T = 0.04, dt = T / 128;
  auto fwd = picard_solve(u, T, dt, 60, 1e-13).states.back();
  auto back = reflect(picard_solve(reflect(fwd), T, dt, 60, 1e-13).states.back());
  CHECK(rel(back, u) < 1e-6);
}

TEST_CASE("scaling") {
  auto g = small_grid();
  auto u = gaussian_data(g, 0.5);
  for (int lam : {2, 4}) {
    auto v = rescale(u, lam);
    CHECK(v.grid.x2_fold == lam);
    CHECK(homogeneous_sobolev_norm(v, -1) == doctest::Approx(homogeneous_sobolev_norm(u, -1)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(rescale(u, 3), PreconditionError);
  // the rescaled solution solves the equation on the rescaled grid
  double T = 0.04, dt = T / 128;
  auto a = rescale(picard_solve(u, T, dt, 60, 1e-13).states.back(), 2);
  auto b = picard_solve(rescale(u, 2), T / 8, dt / 8, 60, 1e-13).states.back();
  CHECK(rel(b, a) < 1e-6);
}
