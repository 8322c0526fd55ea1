#include "zk/resonance.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <iomanip>
#include <numbers>
#include <ostream>

#include "zk/dyadic.hpp"
#include "zk/errors.hpp"

namespace zk {

namespace {

// phi1+phi2+phi3 after eliminating the third pair; the cubic part collapses to
// 3 nu zeta xi, so exact cancellations (triangle vertices) stay exact.
long double delta_ld(long double nu, long double k, long double zeta, long double m) {
  long double xi = -nu - zeta;
  return 3.0L * nu * zeta * xi - nu * m * (2.0L * k + m) - zeta * k * (k + 2.0L * m);
}

double hypot2(double a, double b) { return std::sqrt(a * a + b * b); }

}  // namespace

FrequencyTriple FrequencyTriple::permuted(const std::array<int, 3>& perm) const {
  auto f = firsts();
  auto s = seconds();
  return {f[perm[0]], f[perm[1]], f[perm[2]], s[perm[0]], s[perm[1]], s[perm[2]]};
}

double triple_delta(const FrequencyTriple& t) {
  return static_cast<double>(delta_ld(t.nu, t.k2, t.zeta, t.m2));
}

std::array<double, 3> thetas(const FrequencyTriple& t) {
  return {std::sqrt(3.0 * t.nu * t.nu + double(t.k2) * t.k2),
          std::sqrt(3.0 * t.zeta * t.zeta + double(t.m2) * t.m2),
          std::sqrt(3.0 * t.xi * t.xi + double(t.n2) * t.n2)};
}

double max_theta_gap(const FrequencyTriple& t) {
  auto th = thetas(t);
  return std::max({std::abs(th[0] - th[1]), std::abs(th[0] - th[2]), std::abs(th[1] - th[2])});
}

double min_first(const FrequencyTriple& t) {
  return std::min({std::abs(t.nu), std::abs(t.zeta), std::abs(t.xi)});
}

std::array<double, 3> norms(const FrequencyTriple& t) {
  return {hypot2(t.nu, t.k2), hypot2(t.zeta, t.m2), hypot2(t.xi, t.n2)};
}

std::array<double, 3> modulations(const FrequencyTriple& t, const TimeTriple& tt) {
  auto phi = [](double a, double b) { return a * (a * a + b * b); };
  return {tt.mu - phi(t.nu, t.k2), tt.eta - phi(t.zeta, t.m2), tt.tau - phi(t.xi, t.n2)};
}

double DyadicProfile::nmax() const { return std::max({N[0], N[1], N[2]}); }
double DyadicProfile::nmin() const { return std::min({N[0], N[1], N[2]}); }
double DyadicProfile::nmed() const { return N[0] + N[1] + N[2] - nmax() - nmin(); }
double DyadicProfile::mmin(int i) const { return m_floor(Nstar[i], nmax()); }

bool DyadicProfile::valid() const {
  for (int i = 0; i < 3; ++i) {
    if (!is_power_of_two(N[i]) || N[i] < 1 || !is_power_of_two(Nstar[i]) || Nstar[i] < 1) return false;
    if (!is_power_of_two(L[i]) || L[i] < 1 || !is_power_of_two(M[i])) return false;
    if (M[i] < mmin(i)) return false;
  }
  return nmed() >= nmax() / 4;
}

double m_scale(double theta_gap, double nstar, double nmax) {
  return std::max(dyadic_any(theta_gap), m_floor(nstar, nmax));
}

DyadicProfile dyadic_profile(const FrequencyTriple& t, const TimeTriple& tt) {
  DyadicProfile p;
  auto r = norms(t);
  auto f = t.firsts();
  auto md = modulations(t, tt);
  for (int i = 0; i < 3; ++i) {
    p.N[i] = dyadic(r[i]);
    p.Nstar[i] = dyadic(f[i]);
    p.L[i] = dyadic(md[i]);
  }
  auto th = thetas(t);
  double nm = p.nmax();
  p.M[0] = m_scale(th[1] - th[2], p.Nstar[0], nm);
  p.M[1] = m_scale(th[0] - th[2], p.Nstar[1], nm);
  p.M[2] = m_scale(th[0] - th[1], p.Nstar[2], nm);
  return p;
}

/*
 * Halving from M = N_min/C2 downward.  At M the process stops when
 * min|first| >= 2CM (first kind) or max|theta_i - theta_j| >= M (second kind).
 * Not stopping at 2M already gives min|first| < 4CM and gaps < 2M, so the loop
 * only tests the stop clause.  S0 \ S1 is the top scale, second kind.
 *
 * A Bad verdict at floor beta leaves min|first| < 4C beta and gaps < 2 beta.
 * Through the localization lemma the other two vertices then sit within
 * 10 beta + 4 sqrt(3) C beta of the rotated top vertex; beta = 2^-18 keeps both
 * below 1/10 and below 1/2 on the integer axis, which is the bad box.
 */
Classification classify(const FrequencyTriple& t, const ResonanceConstants& k) {
  Classification out;
  out.beta = k.beta;
  auto r = norms(t);
  double rmin = std::min({r[0], r[1], r[2]});
  double rmax = std::max({r[0], r[1], r[2]});
  if (rmin < 64.0) return out;
  double nmin = dyadic(rmin);
  out.N_min = nmin;
  if (rmax > 8.0 * nmin) return out;

  double gap = max_theta_gap(t);
  double m = min_first(t);
  double M = nmin / k.C2;
  out.tag = Classification::Tag::m_interaction;
  if (gap > nmin / 1000.0) {
    out.M = M;
    out.kind = 2;
    return out;
  }
  for (;;) {
    out.M = M;
    if (m >= 2.0 * k.C * M) {
      out.kind = 1;
      return out;
    }
    if (gap >= M) {
      out.kind = 2;
      return out;
    }
    if (M / 2.0 < k.beta) break;
    M /= 2.0;
  }
  out.tag = Classification::Tag::bad;
  return out;
}

namespace {

bool box_clause(const FrequencyTriple& p) {
  if (p.k2 % 2 != 0) return false;
  long h = -p.k2 / 2;
  if (p.m2 != h || p.n2 != h) return false;
  double k = static_cast<double>(p.k2);
  return std::abs(p.nu) <= 0.1 && std::abs(p.zeta + k / 2) <= 0.1 && std::abs(p.xi - k / 2) <= 0.1;
}

}  // namespace

bool in_bad_box(const FrequencyTriple& t) {
  for (const auto& perm : kPermutations)
    if (box_clause(t.permuted(perm))) return true;
  return false;
}

bool is_bad(const FrequencyTriple& t, const TimeTriple& tt) {
  auto md = modulations(t, tt);
  for (const auto& perm : kPermutations) {
    FrequencyTriple p = t.permuted(perm);
    if (!box_clause(p)) continue;
    double k = std::abs(static_cast<double>(p.k2));
    double cap = 2048.0 * k * k * k;
    if (std::abs(md[0]) <= cap && std::abs(md[1]) <= cap && std::abs(md[2]) <= cap) return true;
  }
  return false;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    case Verdict::precondition_failed: return "precondition_failed";
  }
  return "?";
}

Verdict localization_check(const Vec2& w1, const Vec2& w2, const Vec2& w3, double eps) {
  double n1 = hypot2(w1[0], w1[1]);
  double n2 = hypot2(w2[0], w2[1]);
  double n3 = hypot2(w3[0], w3[1]);
  // rounding allowance for exactly-rotated inputs given in floating point
  double slack = 8.0 * DBL_EPSILON * std::max({n1, n2, n3});
  double sx = w1[0] + w2[0] + w3[0], sy = w1[1] + w2[1] + w3[1];
  if (hypot2(sx, sy) > slack) return Verdict::precondition_failed;
  if (!(eps >= 0) || !(eps < n1 / 100.0)) return Verdict::precondition_failed;
  if (std::abs(n2 - n1) > eps + slack || std::abs(n3 - n1) > eps + slack) return Verdict::precondition_failed;

  double c = -0.5, s = std::sqrt(3.0) / 2.0;
  Vec2 rp{c * w1[0] - s * w1[1], s * w1[0] + c * w1[1]};
  Vec2 rm{c * w1[0] + s * w1[1], -s * w1[0] + c * w1[1]};
  auto dist = [](const Vec2& a, const Vec2& b) { return hypot2(a[0] - b[0], a[1] - b[1]); };
  double r = 5.0 * eps + slack;
  bool ok = (dist(w2, rp) <= r && dist(w3, rm) <= r) || (dist(w2, rm) <= r && dist(w3, rp) <= r);
  return ok ? Verdict::holds : Verdict::violated;
}

Verdict coro_lower_bound_check(const FrequencyTriple& t, double C) {
  auto r = norms(t);
  double rmin = std::min({r[0], r[1], r[2]});
  double rmax = std::max({r[0], r[1], r[2]});
  if (rmin < 64.0) return Verdict::precondition_failed;
  double nmin = dyadic(rmin);
  if (rmax > 8.0 * nmin) return Verdict::precondition_failed;
  double gap = max_theta_gap(t);
  double m = min_first(t);
  if (gap > nmin / 1000.0 || m < C * gap) return Verdict::precondition_failed;
  // Delta is a sum of terms of size N^3; below that rounding level it is not resolved
  double scale = std::abs(t.nu) * r[0] * r[0] + std::abs(t.zeta) * r[1] * r[1] + std::abs(t.xi) * r[2] * r[2];
  double slack = 8.0 * std::numeric_limits<double>::epsilon() * scale;
  return std::abs(triple_delta(t)) + slack >= nmin * nmin / 100.0 * m ? Verdict::holds : Verdict::violated;
}

BadExpansion delta_bad_expansion(double nu, double omega, double k) {
  if (std::abs(nu) > 0.1 || std::abs(omega) > 0.1)
    throw PreconditionError("delta_bad_expansion: need |nu|, |omega| <= 1/10");
  BadExpansion e;
  e.approx = 3.0 * nu * omega * k + 1.5 * k * nu * nu;
  long double kk = k;
  e.exact = static_cast<double>(delta_ld(nu, kk, -kk / 2 + omega, -kk / 2));
  double a = std::abs(nu), b = std::abs(omega);
  e.err_bound = kBadExpansionConstant * (a * a * a + b * b * b);
  return e;
}

double measure_bad_expansion_constant(Rng& rng, int samples, double kmax, double lo) {
  double worst = 0;
  double llo = std::log(lo), lhi = std::log(0.1);
  for (int i = 0; i < samples; ++i) {
    double nu = std::exp(rng.uniform(llo, lhi)) * (rng.uniform() < 0.5 ? -1 : 1);
    double om = std::exp(rng.uniform(llo, lhi)) * (rng.uniform() < 0.5 ? -1 : 1);
    double k = std::round(rng.uniform(1.0, kmax));
    auto e = delta_bad_expansion(nu, om, k);
    double a = std::abs(nu), b = std::abs(om);
    worst = std::max(worst, std::abs(e.exact - e.approx) / (a * a * a + b * b * b));
  }
  return worst;
}

FrequencyTriple sample_annulus_triple(Rng& rng, double N_min) {
  for (;;) {
    auto draw = [&](double& a, long& b) {
      double r = std::sqrt(rng.uniform(N_min * N_min, 64.0 * N_min * N_min));
      double ang = rng.uniform(0.0, 2.0 * std::numbers::pi);
      b = std::lround(r * std::sin(ang));
      a = r * std::cos(ang);
    };
    double nu, zeta;
    long k, m;
    draw(nu, k);
    draw(zeta, m);
    auto t = FrequencyTriple::make(nu, k, zeta, m);
    auto r = norms(t);
    bool ok = true;
    for (double x : r) ok = ok && x >= N_min && x <= 8.0 * N_min;
    if (ok) return t;
  }
}

std::optional<FrequencyTriple> equilateral_triple(double r, double angle) {
  const double s3 = std::sqrt(3.0);
  const double third = 2.0 * std::numbers::pi / 3.0;
  long k = std::lround(r * std::sin(angle));
  long m = std::lround(r * std::sin(angle + third));
  long n = -k - m;
  long double nu = r * std::cos(angle) / s3;
  long double ze = r * std::cos(angle + third) / s3;
  long double K = k, Mm = m, Nn = n;
  for (int it = 0; it < 60; ++it) {
    long double xi = -nu - ze;
    long double f1 = 3 * nu * nu + K * K - 3 * ze * ze - Mm * Mm;
    long double f2 = 3 * nu * nu + K * K - 3 * xi * xi - Nn * Nn;
    long double a = 6 * nu, b = -6 * ze;
    long double c = 6 * nu + 6 * xi, d = 6 * xi;  // d f2/d nu, d f2/d zeta
    long double det = a * d - b * c;
    if (det == 0) return std::nullopt;
    long double dn = (f1 * d - b * f2) / det;
    long double dz = (a * f2 - c * f1) / det;
    nu -= dn;
    ze -= dz;
    if (std::fabs(dn) + std::fabs(dz) < 1e-17L * r) break;
  }
  auto t = FrequencyTriple::make(static_cast<double>(nu), k, static_cast<double>(ze), m);
  if (!std::isfinite(t.nu) || !std::isfinite(t.zeta) || max_theta_gap(t) > 1e-9 * r) return std::nullopt;
  return t;
}

FrequencyTriple axis_triangle(long p, double e1, double e2) {
  double hp = static_cast<double>(p) / 2.0;
  return FrequencyTriple::make(e1, p, -hp + e2, -p / 2);
}

LocalizationSample sample_localization(Rng& rng, double r_lo, double r_hi) {
  double r = rng.uniform(r_lo, r_hi);
  double a = rng.uniform(0.0, 2.0 * std::numbers::pi);
  double eps = r * std::exp(rng.uniform(std::log(1e-8), std::log(0.0099)));
  double r2 = r + 0.999 * eps * rng.uniform(-1.0, 1.0);
  double r3 = r + 0.999 * eps * rng.uniform(-1.0, 1.0);
  double cg = std::clamp((r3 * r3 - r * r - r2 * r2) / (2.0 * r * r2), -1.0, 1.0);
  double g = std::acos(cg) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
  LocalizationSample s;
  s.w1 = {r * std::cos(a), r * std::sin(a)};
  s.w2 = {r2 * std::cos(a + g), r2 * std::sin(a + g)};
  s.w3 = {-s.w1[0] - s.w2[0], -s.w1[1] - s.w2[1]};
  s.eps = eps;
  return s;
}

namespace {

bool in_annulus(const FrequencyTriple& t, double N_min) {
  for (double x : norms(t))
    if (x < N_min || x > 8.0 * N_min) return false;
  return true;
}

std::optional<FrequencyTriple> near_equilateral(Rng& rng, double N_min) {
  double r = rng.uniform(1.8 * N_min, 4.5 * N_min);
  auto t = equilateral_triple(r, rng.uniform(0.0, 2.0 * std::numbers::pi));
  if (!t || !in_annulus(*t, N_min)) return std::nullopt;
  return t;
}

double signed_log_uniform(Rng& rng, double lo, double hi) {
  return std::exp(rng.uniform(std::log(lo), std::log(hi))) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
}

}  // namespace

FrequencyTriple sample_coro_triple(Rng& rng, double N_min) {
  for (;;) {
    auto t = near_equilateral(rng, N_min);
    if (!t) continue;
    double m = min_first(*t);
    double d1 = m * signed_log_uniform(rng, 1e-9, 1e-4), d2 = m * signed_log_uniform(rng, 1e-9, 1e-4);
    auto p = FrequencyTriple::make(t->nu + d1, t->k2, t->zeta + d2, t->m2);
    if (in_annulus(p, N_min)) return p;
  }
}

FrequencyTriple sample_mixture_triple(Rng& rng, double N_min) {
  for (;;) {
    double u = rng.uniform();
    if (u < 1.0 / 3.0) return sample_annulus_triple(rng, N_min);
    if (u < 2.0 / 3.0) {
      auto t = near_equilateral(rng, N_min);
      if (!t) continue;
      auto p = FrequencyTriple::make(t->nu + signed_log_uniform(rng, 1e-9, 1.0), t->k2,
                                     t->zeta + signed_log_uniform(rng, 1e-9, 1.0), t->m2);
      if (in_annulus(p, N_min)) return p;
      continue;
    }
    long lo = static_cast<long>(std::ceil(1.42 * N_min / 2.0)), hi = static_cast<long>(std::floor(7.9 * N_min / 2.0));
    long p = 2 * rng.integer(lo, hi);
    auto t = axis_triangle(p, signed_log_uniform(rng, 1e-9, 1.0), signed_log_uniform(rng, 1e-9, 1.0));
    t = t.permuted(kPermutations[rng.integer(0, 5)]);
    if (in_annulus(t, N_min)) return t;
  }
}

void Census::add(const Classification& c) {
  std::string kind;
  switch (c.tag) {
    case Classification::Tag::m_interaction: kind = std::to_string(c.kind); break;
    case Classification::Tag::bad: kind = "bad"; break;
    case Classification::Tag::out_of_range: kind = "out_of_range"; break;
  }
  ++counts[{c.N_min, c.M, kind}];
}

void write_census_csv(std::ostream& os, const Census& c) {
  os << "N_min,M,kind,count\n" << std::setprecision(17);
  for (const auto& [key, n] : c.counts)
    os << std::get<0>(key) << ',' << std::get<1>(key) << ',' << std::get<2>(key) << ',' << n << '\n';
}

}  // namespace zk
