#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>
#include <sstream>

#include "zk/dyadic.hpp"
#include "zk/errors.hpp"
#include "zk/measure.hpp"
#include "zk/spectrum.hpp"

using namespace zk;

namespace {

struct Case {
  DyadicProfile p;
  LevelSetFixed f;
};

// a profile with M3 above its floor, found at random
Case find_case(std::uint64_t seed, double N) {
  Rng rng(seed);
  for (;;) {
    double nu = rng.uniform(-3 * N, 3 * N), zeta = rng.uniform(-3 * N, 3 * N);
    long k = rng.integer(-3 * N, 3 * N), m = rng.integer(-3 * N, 3 * N);
    auto t = FrequencyTriple::make(nu, k, zeta, m);
    if (std::abs(t.xi) < 2 || std::abs(nu) < 2 || std::abs(zeta) < 2) continue;
    auto p = dyadic_profile(t, TimeTriple{});
    if (p.M[2] > p.mmin(2)) return {p, {t.xi, t.n2, t.m2}};
  }
}

double riemann(const Case& c, double lambda, double delta, double lo, double hi, double step) {
  double s = 0;
  for (double z = lo + step / 2; z < hi; z += step) {
    if (!on_profile(c.p, c.f, z)) continue;
    double d = lambda - delta_along_zeta(c.f, z);
    s += std::pow(1 + d * d, -0.5 * (1 + delta));
  }
  return s * step;
}

}  // namespace

TEST_CASE("Delta along zeta is the triple Delta") {
  LevelSetFixed f{3.5, 4, -7};
  double z = 1.25;
  CHECK(delta_along_zeta(f, z) == triple_delta(FrequencyTriple::make(-3.5 - z, -4 + 7, z, -7)));
}

TEST_CASE("profile intervals carry the profile") {
  auto c = find_case(1, 32);
  auto iv = profile_intervals(c.p, c.f);
  REQUIRE(!iv.empty());
  for (auto I : iv) {
    CHECK(I[0] < I[1]);
    CHECK(on_profile(c.p, c.f, 0.5 * (I[0] + I[1])));
  }
}

TEST_CASE("level set integral against a Riemann sum") {
  for (std::uint64_t seed : {2, 3, 4}) {
    auto c = find_case(seed, 16);
    double R = 2 * c.p.N[1];
    for (double lambda : {0.0, delta_along_zeta(c.f, 0.3 * R)}) {
      double I = level_set_integral(lambda, c.p, c.f, 0.1);
      double J = riemann(c, lambda, 0.1, -R, R, 2e-4);
      CHECK(I == doctest::Approx(J).epsilon(0.02));
    }
  }
}

TEST_CASE("swapped integral runs over xi with zeta frozen") {
  auto c = find_case(5, 16);
  long m2 = c.f.m2, n2 = c.f.n2;
  // freeze zeta at a point of the original triple's shell
  auto iv = profile_intervals(c.p, c.f);
  REQUIRE(!iv.empty());
  double zeta = 0.5 * (iv.front()[0] + iv.front()[1]);
  LevelSetFixedSwapped s{zeta, m2, n2};
  if (swap_second_third(c.p).M[2] <= swap_second_third(c.p).mmin(2) && c.p.Nstar[1] == 1) return;
  double lam = 100, step = 2e-4, R = 2 * c.p.N[2], J = 0;
  for (double xi = -R + step / 2; xi < R; xi += step) {
    auto t = FrequencyTriple::make(-zeta - xi, -m2 - n2, zeta, m2);
    auto q = dyadic_profile(t, TimeTriple{});
    if (q.N != c.p.N || q.Nstar != c.p.Nstar || q.M != c.p.M) continue;
    double d = lam - triple_delta(t);
    J += std::pow(1 + d * d, -0.55) * step;
  }
  CHECK(J > 0);
  CHECK(level_set_integral_swapped(lam, c.p, s, 0.1) == doctest::Approx(J).epsilon(0.02));
}

TEST_CASE("unit-interval variant") {
  auto c = find_case(6, 16);
  auto iv = profile_intervals(c.p, c.f);
  double z0 = iv.front()[0] - 0.25;
  double lam = delta_along_zeta(c.f, z0 + 0.5);
  double I = level_set_integral_unit(lam, c.p, c.f, 0.1, z0);
  CHECK(I == doctest::Approx(riemann(c, lam, 0.1, z0, z0 + 1, 1e-5)).epsilon(0.02));
  CHECK(I <= 1.0 + 1e-9);
}

TEST_CASE("excluded profile is refused") {
  DyadicProfile p;
  p.N = {64, 64, 1};
  p.Nstar = {64, 64, 1};
  p.M = {1, 1, p.mmin(2)};
  CHECK_THROWS_AS(level_set_integral(0, p, {0.5, 0, 3}, 0.1), PreconditionError);
}

TEST_CASE("ceiling constant") {
  double c = level_set_ceiling_constant(0.1);
  CHECK(c > 0);
  CHECK(std::isfinite(c));
  CHECK(level_set_ceiling_constant(0.2) < c);
}

TEST_CASE("A-set measure against a grid count") {
  // small shells so a direct (nu, k2, mu) grid is affordable
  auto t = FrequencyTriple::make(2.6, 1, 1.3, -2);
  auto tt = TimeTriple::make(dispersion(2.6, 1) + 2.5, dispersion(1.3, -2) - 1.2);
  auto p = dyadic_profile(t, tt);
  Rng rng(10);
  auto est = a_set_measure(t.xi, t.n2, tt.tau, p, rng, 400000);
  double s = 0, h = 0.01, hm = 0.01;
  for (double nu = -8 + h / 2; nu < 8; nu += h)
    for (long k = -8; k <= 8; ++k) {
      double zeta = -t.xi - nu;
      long m = -t.n2 - k;
      auto u = FrequencyTriple::make(nu, k, zeta, m);
      double phi1 = dispersion(nu, double(k));
      for (double mu = phi1 - 4 + hm / 2; mu < phi1 + 4; mu += hm) {
        auto q = dyadic_profile(u, TimeTriple::make(mu, -tt.tau - mu));
        if (q.N[0] == p.N[0] && q.N[1] == p.N[1] && q.M[2] == p.M[2] && q.L[0] == p.L[0] && q.L[1] == p.L[1])
          s += h * hm;
      }
    }
  CHECK(est.measure == doctest::Approx(s).epsilon(0.03));
  auto b = a_set_bounds(p, t.xi);
  CHECK(est.measure <= b.minimum());
  auto rel = a_set_measure(t.xi, t.n2, tt.tau, p, rng, 100000, true);
  CHECK(rel.measure >= 0);
}

TEST_CASE("A-set bound applicability") {
  DyadicProfile p;
  p.N = {64, 8, 64};
  p.Nstar = {64, 8, 64};
  p.L = {4, 2, 1};
  p.M = {1, 1, 16};
  auto b = a_set_bounds(p, 3);
  CHECK(b.second_applies);
  CHECK(b.third_applies);
  CHECK(b.trivial == doctest::Approx(64 * 2 * 64));
  CHECK_FALSE(a_set_bounds(p, 0.5).third_applies);
  CHECK(b.minimum() <= b.trivial);
}

TEST_CASE("bilinear constants") {
  Rng rng(11);
  BilinearOptions o;
  o.draws = 5;
  o.N = 128;
  o.M = 1;
  double side = o.c;
  Square a{110.0, 64 - side / 2, side}, b{64.0, 110 - side / 2, side};
  auto r = bilinear_constant(a, b, 1, 4, BilinearVariant::general, o, rng);
  CHECK(r.empirical_constant > 0);
  CHECK(std::isfinite(r.empirical_constant));
  CHECK(r.samples == 5);
  CHECK_THROWS_AS(bilinear_constant(a, b, 3, 4, BilinearVariant::general, o, rng), PreconditionError);
  Square big{110.0, 63.5, 1.0};
  CHECK_THROWS_AS(bilinear_constant(big, b, 1, 4, BilinearVariant::general, o, rng), PreconditionError);
  Square norow{110.0, 64.1, side};
  CHECK_THROWS_AS(bilinear_constant(norow, b, 1, 4, BilinearVariant::general, o, rng), PreconditionError);
  std::ostringstream os;
  write_bound_csv(os, {r});
  CHECK(os.str().find("refined_general") != std::string::npos);
}

TEST_CASE("bilinear product norm matches a brute-force sum") {
  // one cell each, so the ratio does not depend on the random amplitudes
  Square a{1.0, -0.5, 1.0}, b{2.0, -0.5, 1.0};
  BilinearOptions o;
  o.draws = 1;
  o.cells_per_side = 1;
  Rng rng(3);
  auto r = bilinear_constant(a, b, 1, 1, BilinearVariant::unit_general, o, rng);

  // F(xi, tau) = int dnu T(tau - nu^3 - (xi - nu)^3), T = box[-2,2] * box[-2,2]
  auto T = [](double x) { return std::max(0.0, 4.0 - std::abs(x)); };
  const int nxi = 400, nnu = 1500;
  const double ht = 0.01, tlo = -10, thi = 50;
  const int ntau = static_cast<int>((thi - tlo) / ht);
  std::vector<double> F(ntau);
  double acc = 0;
  for (int p = 0; p < nxi; ++p) {
    double xi = 3 + (p + 0.5) * 2.0 / nxi;
    std::fill(F.begin(), F.end(), 0.0);
    double lo = std::max(1.0, xi - 3), hi = std::min(2.0, xi - 2);
    double dn = (hi - lo) / nnu;
    for (int q = 0; q < nnu; ++q) {
      double nu = lo + (q + 0.5) * dn, g = nu * nu * nu + std::pow(xi - nu, 3);
      int l0 = static_cast<int>((g - 4 - tlo) / ht), l1 = static_cast<int>((g + 4 - tlo) / ht) + 1;
      for (int l = std::max(l0, 0); l <= std::min(l1, ntau - 1); ++l) F[l] += dn * T(tlo + (l + 0.5) * ht - g);
    }
    for (double f : F) acc += f * f * ht * 2.0 / nxi;
  }
  double rhs = std::min(dyadic(1.5), dyadic(2.5));
  double want = std::sqrt(acc / (4.0 * 4.0)) / rhs;
  CHECK(r.empirical_constant == doctest::Approx(want).epsilon(0.01));
}

TEST_CASE("bilinear constant is stable under mesh refinement") {
  auto run = [](int xi_nodes, double tol) {
    BilinearOptions o;
    o.draws = 3;
    o.N = 256;
    o.M = 2;
    o.xi_nodes = xi_nodes;
    o.phase_tol = tol;
    double side = o.c * o.M, r = 256;
    Square a{r * std::cos(std::numbers::pi / 6), std::round(r / 2) - side / 2, side};
    Square b{r * std::cos(std::numbers::pi / 3), std::round(r * std::sin(std::numbers::pi / 3)) - side / 2, side};
    Rng rng(5);
    return bilinear_constant(a, b, 4, 16, BilinearVariant::general, o, rng).empirical_constant;
  };
  double base = run(8, 1.0 / 16);
  CHECK(run(16, 1.0 / 32) == doctest::Approx(base).epsilon(0.01));
}

TEST_CASE("bilinear csv header") {
  BoundReport r;
  r.bound_name = "refined_general";
  std::ostringstream os;
  write_bound_csv(os, {r});
  CHECK(os.str().rfind("bound_name,N,M,L1,L2,empirical_constant\n", 0) == 0);
}
