#include "doctest.h"

#include <cmath>

#include "zk/errors.hpp"
#include "zk/rng.hpp"
#include "zk/spectrum.hpp"

using namespace zk;

namespace {

SpectralField random_field(const FrequencyGrid& g, std::uint64_t seed) {
  Rng rng(seed);
  SpectralField f(g);
  for (auto& c : f.coeffs) c = rng.complex_normal();
  return f;
}

double max_diff(const SpectralField& a, const SpectralField& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) d = std::max(d, std::abs(a.coeffs[i] - b.coeffs[i]));
  return d;
}

}  // namespace

TEST_CASE("dispersion symbol") {
  CHECK(dispersion(1, 2) == doctest::Approx(5));
  CHECK(dispersion(-2, 0) == doctest::Approx(-8));
  CHECK(dispersion(0, 7) == 0);
}

TEST_CASE("grid geometry") {
  FrequencyGrid g(4.0, 16, 3);
  CHECK(g.h() == doctest::Approx(0.5));
  CHECK(g.xi(g.zero_column()) == doctest::Approx(0));
  CHECK(g.column_of(1.5) == 11);
  CHECK(g.column_of(1.3) == -1);
  CHECK(g.mirror_column(0) == 0);
  CHECK(g.xi(g.mirror_column(3)) == doctest::Approx(-g.xi(3)));
}

TEST_CASE("physical round trip and Parseval") {
  FrequencyGrid g(3.0, 12, 4);
  auto f = random_field(g, 1);
  auto p = to_physical(f);
  auto back = to_spectral(p);
  CHECK(max_diff(f, back) < 1e-12);
  double s = 0;
  for (auto c : f.coeffs) s += std::norm(c);
  CHECK(l2_norm(p) == doctest::Approx(std::sqrt(s * g.h())).epsilon(1e-12));
}

TEST_CASE("product matches brute-force truncated convolution") {
  FrequencyGrid g(2.0, 8, 3);
  auto a = random_field(g, 2), b = random_field(g, 3);
  auto c = multiply_fields(a, b);
  SpectralField o(g);
  int half = g.n_x1 / 2;
  for (int p = 0; p < g.n_x1; ++p)
    for (int q = 0; q < g.n_x1; ++q) {
      int j = p + q - half;
      if (j < 0 || j >= g.n_x1) continue;
      for (int n = -g.k_max; n <= g.k_max; ++n)
        for (int m = -g.k_max; m <= g.k_max; ++m) {
          if (std::abs(n + m) > g.k_max) continue;
          o.at(j, n + m) += a.at(p, n) * b.at(q, m);
        }
    }
  o *= g.h() / (2 * M_PI);
  CHECK(max_diff(c, o) < 1e-12);
}

TEST_CASE("linear flow is a phase") {
  FrequencyGrid g(4.0, 16, 3);
  auto f = single_mode(g, 11, 2, {1.0, 0.0});
  auto u = propagate_linear(f, 0.3);
  double phi = dispersion(g.xi(11), 2);
  CHECK(std::abs(u.at(11, 2) - std::polar(1.0, 0.3 * phi)) < 1e-14);
  auto d = derivative_x1(f);
  CHECK(std::abs(d.at(11, 2) - cplx(0, g.xi(11))) < 1e-14);
}

TEST_CASE("real fields") {
  FrequencyGrid g(3.0, 12, 4);
  auto f = make_real(random_field(g, 4));
  CHECK(f.real_valued);
  CHECK(conjugate_symmetry_defect(f) < 1e-14);
  auto p = to_physical(f);
  double im = 0;
  for (auto v : p.values) im = std::max(im, std::abs(v.imag()));
  CHECK(im < 1e-13);
  CHECK(max_diff(reflect(reflect(f)), f) == 0);
  // product of real fields stays real
  CHECK(conjugate_symmetry_defect(multiply_fields(f, f)) < 1e-13);
}

TEST_CASE("grid mismatch is reported") {
  FrequencyGrid g(3.0, 12, 4), h(3.0, 12, 5);
  CHECK_THROWS_AS(multiply_fields(SpectralField(g), SpectralField(h)), GridMismatch);
}
