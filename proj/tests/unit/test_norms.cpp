#include "doctest.h"

#include <cmath>
#include <numbers>

#include "zk/errors.hpp"
#include "zk/norms.hpp"
#include "zk/spacetime.hpp"

using namespace zk;

TEST_CASE("sobolev norms of one mode") {
  FrequencyGrid g(4.0, 16, 3);
  auto f = single_mode(g, 12, 2, {3.0, 4.0});
  double xi = g.xi(12);
  double r2 = xi * xi + 4;
  CHECK(sobolev_norm(f, 0) == doctest::Approx(5 * std::sqrt(g.h())));
  CHECK(sobolev_norm(f, 1) == doctest::Approx(5 * std::sqrt(g.h() * (1 + r2))));
  CHECK(homogeneous_sobolev_norm(f, -1) == doctest::Approx(5 * std::sqrt(g.h() / r2)));
  CHECK(tilde_sobolev_norm(f, 0) == doctest::Approx(5 * std::sqrt(g.h() * bracket(xi) / std::abs(xi))));
  auto z = single_mode(g, g.zero_column(), 0, {1, 0});
  CHECK(homogeneous_sobolev_norm(z, 0.5) == 0);
}

TEST_CASE("norm parameters are checked") {
  CHECK_THROWS_AS((NormParams{0, 0.5, 0.3, 0}.validate()), PreconditionError);
  CHECK_THROWS_AS((NormParams{0, 0.5, 0.0, 0.3}.validate()), PreconditionError);
  CHECK_NOTHROW((NormParams{0, 0.5, 0.1, -0.5}.validate()));
}

TEST_CASE("windowed transform: closed form for a free wave") {
  FrequencyGrid g(4.0, 16, 2);
  auto f = single_mode(g, 10, 1, {1.0, 0.0});
  int m = 65;
  double T = 0.5, dt = T / (m - 1);
  std::vector<double> t(m);
  std::vector<SpectralField> s(m);
  for (int i = 0; i < m; ++i) {
    t[i] = i * dt;
    s[i] = propagate_linear(f, t[i]);
  }
  // comoving frame, indicator window: everything sits at zero modulation
  auto st = windowed_transform(t, s, Frame::comoving, 0, false);
  int c = (st.n_tau - 1) / 2;
  CHECK(std::abs(st.at(10, 3, c)) == doctest::Approx(m * dt / std::sqrt(2 * std::numbers::pi)));
  CHECK(std::abs(st.at(10, 3, c + 1)) < 1e-12);
  // Parseval on the discrete level
  double lhs = 0;
  for (auto z : st.coeffs) lhs += std::norm(z);
  CHECK(lhs * st.h_tau == doctest::Approx(m * dt));
  NormParams p{0, 0, 0, 0};
  CHECK(xsb_norm(st, p) == doctest::Approx(std::sqrt(m * dt * g.h())));

  // Hann window: sum of w^2 dt
  auto sh = windowed_transform(t, s, Frame::comoving, 0, true);
  double w2 = 0;
  for (int i = 0; i < m; ++i) w2 += std::pow(hann(t[i], 0, T), 2) * dt;
  CHECK(xsb_norm(sh, p) == doctest::Approx(std::sqrt(w2 * g.h())));
}

TEST_CASE("Y and Z norms dominate X") {
  FrequencyGrid g(4.0, 16, 2);
  auto f = single_mode(g, 10, 1, {1.0, 0.0}) + single_mode(g, 5, -2, {0.0, 2.0});
  int m = 129;
  double dt = 1.0 / (m - 1);
  std::vector<double> t(m);
  std::vector<SpectralField> s(m);
  for (int i = 0; i < m; ++i) {
    t[i] = i * dt;
    s[i] = propagate_linear(f, t[i]);
  }
  NormParams p{1, 0.6, 0, 0};
  auto a = windowed_transform(t, s, Frame::comoving, 4096);
  double xc = xsb_norm(a, p);
  CHECK(xc > 0);
  CHECK(ysb_norm(a, p) >= xc);
  auto z = zsb_norm(a, p);
  CHECK(z.total >= ysb_norm(a, p));
  CHECK(z.sup_term > 0);
}
