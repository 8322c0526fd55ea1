#include "zk/measure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <iomanip>
#include <limits>
#include <ostream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "zk/dyadic.hpp"
#include "zk/errors.hpp"

namespace zk {

void write_bound_csv(std::ostream& os, const std::vector<BoundReport>& rows) {
  os << "bound_name,N,M,L1,L2,empirical_constant\n" << std::setprecision(10);
  for (const auto& r : rows)
    os << r.bound_name << ',' << r.N << ',' << r.M << ',' << r.L1 << ',' << r.L2 << ',' << r.empirical_constant
       << '\n';
}

namespace {

FrequencyTriple triple_at(const LevelSetFixed& f, double zeta) {
  // (nu, k2) is the derived pair here; reuse make() with (zeta, m2) and (xi, n2)
  FrequencyTriple t;
  t.zeta = zeta;
  t.m2 = f.m2;
  t.xi = f.xi;
  t.n2 = f.n2;
  t.nu = -f.xi - zeta;
  t.k2 = -f.n2 - f.m2;
  return t;
}

bool same_shells(const DyadicProfile& a, const DyadicProfile& b) {
  return a.N == b.N && a.Nstar == b.Nstar && a.M == b.M;
}

// points where a shell boundary of d(sqrt(x^2 + c^2)) is crossed, x = s * (zeta - z0)
void norm_breaks(std::vector<double>& out, double N, double c, double z0) {
  for (double R : {N, 2.0 * N, 2.0}) {
    double r2 = R * R - c * c;
    if (r2 < 0) continue;
    double w = std::sqrt(r2);
    out.push_back(z0 - w);
    out.push_back(z0 + w);
  }
}

void first_breaks(std::vector<double>& out, double Ns, double z0) {
  for (double R : {Ns, 2.0 * Ns, 2.0}) {
    out.push_back(z0 - R);
    out.push_back(z0 + R);
  }
}

// roots of g(zeta) = level on [a, b], g sampled on a fine partition and bisected
template <class G>
void level_crossings(std::vector<double>& out, G&& g, double level, double a, double b, int parts) {
  double h = (b - a) / parts;
  double x0 = a, g0 = g(a) - level;
  for (int i = 1; i <= parts; ++i) {
    double x1 = i == parts ? b : a + i * h;
    double g1 = g(x1) - level;
    if ((g0 < 0) != (g1 < 0)) {
      double lo = x0, hi = x1, glo = g0;
      for (int it = 0; it < 80 && hi - lo > 1e-15 * (1 + std::abs(lo)); ++it) {
        double mid = 0.5 * (lo + hi);
        double gm = g(mid) - level;
        if ((gm < 0) == (glo < 0)) {
          lo = mid;
          glo = gm;
        } else {
          hi = mid;
        }
      }
      out.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    g0 = g1;
  }
}

double bracket_weight(double x, double delta) { return std::pow(1.0 + x * x, -0.5 * (1.0 + delta)); }

struct Parabola {
  // Delta(zeta) = A zeta^2 + B zeta + C0
  long double A, B, C0;
  double operator()(double z) const { return static_cast<double>((A * z + B) * z + C0); }
  double slope(double z) const { return static_cast<double>(2 * A * z + B); }
};

Parabola parabola(const LevelSetFixed& f) {
  long double xi = f.xi, n = f.n2, m = f.m2;
  long double k = -n - m;
  // Delta(0) with zeta = 0, nu = -xi
  long double d0 = triple_delta(triple_at(f, 0.0));
  return {-3.0L * xi, -3.0L * xi * xi + m * m - k * k, d0};
}

// Integral of <lambda - Delta>^{-1-delta} over [a, b], split at the peak(s)
// with geometric refinement around them.
double integrate_piece(const Parabola& P, double lambda, double delta, double a, double b, int level) {
  std::vector<double> pts{a, b};
  auto add = [&](double x) {
    if (x > a && x < b) pts.push_back(x);
  };
  std::vector<double> centres;
  if (P.A != 0) {
    double zv = static_cast<double>(-P.B / (2 * P.A));
    add(zv);
    centres.push_back(zv);
    long double disc = P.B * P.B - 4 * P.A * (P.C0 - lambda);
    if (disc >= 0) {
      long double sq = std::sqrt(disc);
      long double q = -0.5L * (P.B + (P.B >= 0 ? sq : -sq));
      if (q != 0) {
        centres.push_back(static_cast<double>(q / P.A));
        centres.push_back(static_cast<double>((P.C0 - lambda) / q));
      }
    }
  } else if (P.B != 0) {
    centres.push_back(static_cast<double>((lambda - P.C0) / P.B));
  }
  for (double c : centres) {
    add(c);
    double w = 1.0 / std::max(std::abs(P.slope(c)), 1e-300);
    if (!std::isfinite(w) || w > b - a) w = (b - a) / 4;
    w = std::max(w, 1e-14 * (1 + std::abs(c)));
    for (double s = w; s < b - a; s *= 2.0) {
      add(c - s);
      add(c + s);
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  auto f = [&](double z) { return bracket_weight(lambda - P(z), delta); };
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  double tol = std::pow(10.0, -3.0 - level);
  double total = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double lo = pts[i], hi = pts[i + 1];
    // halving the mesh once per refinement level
    int sub = 1 << level;
    double h = (hi - lo) / sub;
    for (int j = 0; j < sub; ++j) total += GK::integrate(f, lo + j * h, j + 1 == sub ? hi : lo + (j + 1) * h, 10, tol);
  }
  return total;
}

double integrate_intervals(const std::vector<std::array<double, 2>>& iv, const LevelSetFixed& fx, double lambda,
                           double delta, const QuadratureOptions& q) {
  if (!(delta > 0)) throw PreconditionError("level_set_integral: delta must be positive");
  if (iv.empty()) return 0.0;
  Parabola P = parabola(fx);
  double prev = 0;
  for (int level = 0; level < q.max_refinements; ++level) {
    double total = 0;
    for (const auto& I : iv) total += integrate_piece(P, lambda, delta, I[0], I[1], level);
    if (!std::isfinite(total)) throw NumericalFailure("level_set_integral: non-finite quadrature");
    if (level > 0 && std::abs(total - prev) <= q.rel_agreement * std::abs(total)) return total;
    prev = total;
  }
  throw NumericalFailure("level_set_integral: refinements do not agree");
}

std::vector<std::array<double, 2>> intervals_in(const DyadicProfile& p, const LevelSetFixed& f, double lo,
                                                double hi) {
  std::vector<double> pts{lo, hi};
  double xi = f.xi;
  double k = static_cast<double>(-f.n2 - f.m2), m = static_cast<double>(f.m2);
  norm_breaks(pts, p.N[0], k, -xi);
  norm_breaks(pts, p.N[1], m, 0.0);
  first_breaks(pts, p.Nstar[0], -xi);
  first_breaks(pts, p.Nstar[1], 0.0);
  pts.push_back(0.0);
  pts.push_back(-xi);
  auto th = [&](double z) { return thetas(triple_at(f, z)); };
  std::array<std::function<double(double)>, 3> gaps{
      [&](double z) { auto t = th(z); return t[1] - t[2]; },
      [&](double z) { auto t = th(z); return t[0] - t[2]; },
      [&](double z) { auto t = th(z); return t[0] - t[1]; }};
  for (int i = 0; i < 3; ++i) {
    double Mi = p.M[i], fl = p.mmin(i);
    for (double lev : {Mi, 2.0 * Mi, 2.0 * fl})
      for (double sgn : {-1.0, 1.0}) level_crossings(pts, gaps[i], sgn * lev, lo, hi, 256);
  }
  std::sort(pts.begin(), pts.end());
  std::vector<std::array<double, 2>> out;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double a = std::max(pts[i], lo), b = std::min(pts[i + 1], hi);
    if (!(b > a)) continue;
    if (!on_profile(p, f, 0.5 * (a + b))) continue;
    if (!out.empty() && out.back()[1] >= a) out.back()[1] = b;
    else out.push_back({a, b});
  }
  return out;
}

void check_hypothesis(const DyadicProfile& p) {
  if (p.M[2] <= p.mmin(2) && p.Nstar[2] == 1)
    throw PreconditionError("level_set_integral: excluded case (M3, N*3) = (M3_min, 1)");
}

}  // namespace

bool on_profile(const DyadicProfile& p, const LevelSetFixed& f, double zeta) {
  return same_shells(dyadic_profile(triple_at(f, zeta), TimeTriple{}), p);
}

std::vector<std::array<double, 2>> profile_intervals(const DyadicProfile& p, const LevelSetFixed& f) {
  double R = 2.0 * p.N[1];
  return intervals_in(p, f, -R, R);
}

double delta_along_zeta(const LevelSetFixed& f, double zeta) { return triple_delta(triple_at(f, zeta)); }

double level_set_integral(double lambda, const DyadicProfile& p, const LevelSetFixed& f, double delta,
                          const QuadratureOptions& q) {
  check_hypothesis(p);
  return integrate_intervals(profile_intervals(p, f), f, lambda, delta, q);
}

DyadicProfile swap_second_third(const DyadicProfile& p) {
  DyadicProfile s = p;
  std::swap(s.N[1], s.N[2]);
  std::swap(s.Nstar[1], s.Nstar[2]);
  std::swap(s.L[1], s.L[2]);
  std::swap(s.M[1], s.M[2]);
  return s;
}

double level_set_integral_swapped(double lambda, const DyadicProfile& p, const LevelSetFixedSwapped& f,
                                  double delta, const QuadratureOptions& q) {
  // relabel: the variable pair takes slot 2, the fixed pair slot 3
  DyadicProfile s = swap_second_third(p);
  LevelSetFixed g{f.zeta, f.m2, f.n2};
  check_hypothesis(s);
  return integrate_intervals(profile_intervals(s, g), g, lambda, delta, q);
}

double level_set_integral_unit(double lambda, const DyadicProfile& p, const LevelSetFixed& f, double delta,
                               double zeta0, const QuadratureOptions& q) {
  return integrate_intervals(intervals_in(p, f, zeta0, zeta0 + 1.0), f, lambda, delta, q);
}

double level_set_ceiling_constant(double delta) {
  // two monotone pieces with |Delta'| >= M3 N / 2, each contributing
  // (2 / (M3 N)) * int <y>^{-1-delta} dy
  double line = std::sqrt(std::numbers::pi) * boost::math::tgamma(0.5 * delta) / boost::math::tgamma(0.5 * (1.0 + delta));
  return 4.0 * line;
}

// --- A-sets ---------------------------------------------------------------------

double ASetBounds::minimum() const {
  double m = trivial;
  if (first_applies) m = std::min(m, first);
  if (second_applies) m = std::min(m, second);
  if (third_applies) m = std::min(m, third);
  return m;
}

/*
 * Constants, with N = N_max (N3 <= 2 max(N1, N2) by the triangle inequality):
 *  k2 takes at most 4 min(N1,N2) values, nu ranges over an interval of length
 *  4 min(N1,N2) and mu over at most 4 min(L1,L2).  This gives 64.
 *  theta1^2 - theta2^2 is affine in nu, so {|theta1 - theta2| >= M3} has two
 *  pieces; on each |d/dnu (phi1 + phi2)| >= M3 N / 2 while phi1 + phi2 ranges
 *  over 4(L1 + L2).  This gives 4 * 4 * 2 * 16 = 512.
 *  If N1 >= 4 N2, theta1 - theta2 >= (1 - sqrt3/2) N1 on one piece: 4096.
 *  For the third bound (zeta, m2) lies in a strip of width 8 sqrt3 M3 N / N3
 *  normal to (3 xi, n2); summing rows adds one row length 16 sqrt3 M3 N/(6|xi|),
 *  which is <= (2/3) 16 sqrt3 M3 N^2/N3 once |xi| >= 1: 512.
 */
ASetBounds a_set_bounds(const DyadicProfile& p, double xi) {
  ASetBounds b;
  double N = p.nmax();
  double n12 = std::min(p.N[0], p.N[1]);
  double lmin = std::min(p.L[0], p.L[1]);
  double ll = p.L[0] * p.L[1];
  b.trivial = ASetBounds::c_trivial * lmin * n12 * n12;
  b.first_applies = p.M[2] > p.mmin(2) && std::max(p.N[0], p.N[1]) >= 2;
  b.first = ASetBounds::c_first * ll * n12 / (N * p.M[2]);
  b.second_applies = p.N[0] >= 4 * p.N[1] || p.N[1] >= 4 * p.N[0];
  b.second = ASetBounds::c_second * ll * n12 / (N * N);
  b.third_applies = std::abs(xi) >= 1;
  b.third = ASetBounds::c_third * lmin * (p.M[2] / p.N[2]) * N * N;
  return b;
}

namespace {

using Interval = std::array<double, 2>;

// {x : d(x) = L} as at most two intervals
int shell(double L, Interval out[2]) {
  if (L <= 1) {
    out[0] = {-2.0, 2.0};
    return 1;
  }
  out[0] = {-2.0 * L, -L};
  out[1] = {L, 2.0 * L};
  return 2;
}

double overlap_length(const Interval* a, int na, const Interval* b, int nb) {
  double s = 0;
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) s += std::max(0.0, std::min(a[i][1], b[j][1]) - std::max(a[i][0], b[j][0]));
  return s;
}

}  // namespace

ASetEstimate a_set_measure(double xi, long n2, double tau, const DyadicProfile& p, Rng& rng, long samples,
                           bool relaxed) {
  ASetEstimate est;
  double N1 = p.N[0], N2 = p.N[1];
  double nlo = std::max(-2.0 * N1, -xi - 2.0 * N2), nhi = std::min(2.0 * N1, -xi + 2.0 * N2);
  long klo = static_cast<long>(std::floor(std::max(-2.0 * N1, -n2 - 2.0 * N2))) + 1;
  long khi = static_cast<long>(std::ceil(std::min(2.0 * N1, -n2 + 2.0 * N2))) - 1;
  if (!(nhi > nlo) || khi < klo || samples <= 0) return est;
  double box = (nhi - nlo) * static_cast<double>(khi - klo + 1);
  double nmax = p.nmax();
  Interval s1[2], s2[2];
  int c1 = shell(p.L[0], s1), c2 = shell(p.L[1], s2);
  double sum = 0, sum2 = 0;
  for (long i = 0; i < samples; ++i) {
    double nu = rng.uniform(nlo, nhi);
    long k = rng.integer(klo, khi);
    double zeta = -xi - nu;
    long m = -n2 - k;
    double val = 0;
    if (dyadic(std::hypot(nu, double(k))) == N1 && dyadic(std::hypot(zeta, double(m))) == N2) {
      auto t = FrequencyTriple::make(nu, k, zeta, m);
      auto th = thetas(t);
      double gap = th[0] - th[1];
      bool ok = relaxed ? std::abs(gap) < 2.0 * p.M[2] : m_scale(gap, p.Nstar[2], nmax) == p.M[2];
      if (ok) {
        // mu in phi1 + S(L1) and mu in -tau - phi2 - S(L2)
        double phi1 = nu * (nu * nu + double(k) * k), phi2 = zeta * (zeta * zeta + double(m) * m);
        Interval a[2], b[2];
        for (int j = 0; j < c1; ++j) a[j] = {phi1 + s1[j][0], phi1 + s1[j][1]};
        for (int j = 0; j < c2; ++j) b[j] = {-tau - phi2 - s2[j][1], -tau - phi2 - s2[j][0]};
        val = overlap_length(a, c1, b, c2);
      }
    }
    sum += val;
    sum2 += val * val;
  }
  double n = static_cast<double>(samples);
  double mean = sum / n;
  double var = std::max(0.0, sum2 / n - mean * mean);
  est.measure = box * mean;
  est.std_error = box * std::sqrt(var / n);
  est.samples = samples;
  return est;
}

}  // namespace zk
