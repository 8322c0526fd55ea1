#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <numbers>
#include <sstream>

#include "zk/dyadic.hpp"
#include "zk/errors.hpp"
#include "zk/measure.hpp"
#include "zk/parallel.hpp"

namespace zk {

namespace {

DyadicProfile doubled(const DyadicProfile& p, double f) {
  DyadicProfile q = p;
  for (int i = 0; i < 3; ++i) {
    q.N[i] *= f;
    q.Nstar[i] *= f;
    q.M[i] *= f;
  }
  return q;
}

struct Shape {
  double nu, zeta;
  long k2, m2;
};

FrequencyTriple scaled(const Shape& s, double f) {
  return FrequencyTriple::make(s.nu * f, std::lround(s.k2 * f), s.zeta * f, std::lround(s.m2 * f));
}

// profile of the shape at scale factor f; empty if it is not the rescaled base profile
std::optional<DyadicProfile> profile_at(const Shape& s, const DyadicProfile& base, double f) {
  auto p = dyadic_profile(scaled(s, f), TimeTriple{});
  auto want = doubled(base, f);
  if (p.N != want.N || p.Nstar != want.Nstar || p.M != want.M) return std::nullopt;
  if (!(p.M[2] > p.mmin(2))) return std::nullopt;
  return p;
}

std::array<double, 2> delta_range(const LevelSetFixed& f, const std::vector<std::array<double, 2>>& iv) {
  double lo = INFINITY, hi = -INFINITY;
  double vertex = -0.5 * f.xi;  // Delta is a parabola in zeta with axis at -xi/2
  for (const auto& I : iv)
    for (double z : {I[0], I[1], vertex}) {
      if (z < I[0] || z > I[1]) continue;
      double d = delta_along_zeta(f, z);
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
  return {lo, hi};
}

}  // namespace

LevelSetSweep level_set_sweep(const LevelSetSweepOptions& o) {
  if (o.scales.size() < 2 || o.shapes < 1 || o.lambdas < 2) throw PreconditionError("level_set_sweep: empty sweep");
  double N0 = o.scales.front();
  for (double s : o.scales)
    if (!is_power_of_two(s / N0)) throw PreconditionError("level_set_sweep: scales must be N0 times powers of two");

  // pick shapes at the base scale that keep their profile under every rescaling
  Rng rng(o.seed);
  std::vector<Shape> shapes;
  std::vector<DyadicProfile> bases;
  for (int tries = 0; (int)shapes.size() < o.shapes; ++tries) {
    if (tries > 100000) throw NumericalFailure("level_set_sweep: could not find admissible shapes");
    auto sign = [&] { return rng.uniform() < 0.5 ? -1.0 : 1.0; };
    Shape s{sign() * rng.uniform(2, 3 * N0), sign() * rng.uniform(2, 3 * N0), (long)rng.integer(-3 * N0, 3 * N0),
            (long)rng.integer(-3 * N0, 3 * N0)};
    auto t = scaled(s, 1);
    if (std::abs(t.xi) < 2) continue;
    auto base = dyadic_profile(t, TimeTriple{});
    if (!(base.M[2] > base.mmin(2))) continue;
    bool ok = true;
    for (double sc : o.scales) {
      double f = sc / N0;
      auto p = profile_at(s, base, f);
      if (!p) {
        ok = false;
        break;
      }
      auto tt = scaled(s, f);
      if (profile_intervals(*p, {tt.xi, tt.n2, tt.m2}).empty()) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    shapes.push_back(s);
    bases.push_back(base);
  }

  LevelSetSweep out;
  out.ceiling = level_set_ceiling_constant(o.delta);
  std::size_t ns = o.scales.size();
  out.profiles.resize(shapes.size() * ns);
  parallel_for(out.profiles.size(), [&](std::size_t idx) {
    std::size_t si = idx / ns, ki = idx % ns;
    double f = o.scales[ki] / N0;
    auto t = scaled(shapes[si], f);
    auto p = *profile_at(shapes[si], bases[si], f);
    LevelSetFixed fx{t.xi, t.n2, t.m2};
    auto iv = profile_intervals(p, fx);
    auto [lo, hi] = delta_range(fx, iv);
    auto& r = out.profiles[idx];
    r.shape = static_cast<int>(si);
    r.N = p.nmax();
    r.M3 = p.M[2];
    r.profile = p;
    r.fixed = fx;
    for (int j = 0; j < o.lambdas; ++j) {
      double lam = lo + (0.1 + 0.8 * j / (o.lambdas - 1)) * (hi - lo);
      double c = level_set_integral(lam, p, fx, o.delta) * r.N * r.M3;
      r.constant = std::max(r.constant, c);
      (2 * j < o.lambdas ? r.constant_low_half : r.constant_high_half) =
          std::max(2 * j < o.lambdas ? r.constant_low_half : r.constant_high_half, c);
    }
  });

  for (std::size_t si = 0; si < shapes.size(); ++si) {
    double mx = 0, mn = INFINITY;
    for (std::size_t ki = 0; ki < ns; ++ki) {
      double c = out.profiles[si * ns + ki].constant;
      mx = std::max(mx, c);
      mn = std::min(mn, c);
    }
    out.C_emp = std::max(out.C_emp, mx);
    out.worst_shape_spread = std::max(out.worst_shape_spread, mx / mn);
  }
  return out;
}

namespace {

double random_dyadic(Rng& rng, int lo_exp, int hi_exp) { return std::ldexp(1.0, (int)rng.integer(lo_exp, hi_exp)); }

// a point with d(|(x, k)|) = N, k integer
std::pair<double, long> point_in_shell(Rng& rng, double N) {
  double R = 2.0 * (N <= 1 ? 1.0 : N);
  for (;;) {
    double x = rng.uniform(-R, R);
    long k = rng.integer(-(long)R, (long)R);
    if (dyadic(std::hypot(x, double(k))) == N) return {x, k};
  }
}

// sigma with d(sigma) = L
double modulation(Rng& rng, double L) {
  double s = L <= 1 ? rng.uniform(-1.9, 1.9) : rng.uniform(L, 2 * L);
  return rng.uniform() < 0.5 ? -s : s;
}

void keep_worst(std::map<std::string, BoundReport>& w, const std::string& name, double ratio,
                const DyadicProfile& p, const std::string& where) {
  auto& r = w[name];
  r.bound_name = name;
  ++r.samples;
  if (ratio >= r.empirical_constant) {
    r.empirical_constant = ratio;
    r.N = p.nmax();
    r.M = p.M[2];
    r.L1 = p.L[0];
    r.L2 = p.L[1];
    r.worst_case = where;
  }
}

}  // namespace

ASetSweep a_set_sweep(const ASetSweepOptions& o) {
  int top = std::max(0, (int)std::floor(std::log2(o.max_norm)));
  struct Item {
    DyadicProfile p;
    double xi, tau;
    long n2;
    ASetEstimate strict, relaxed;
    std::string where;
  };
  std::vector<Item> items(o.configurations);
  Rng root(o.seed);
  parallel_for(items.size(), [&](std::size_t i) {
    Rng rng = root.split(i);
    double N1 = random_dyadic(rng, 0, top), N2 = random_dyadic(rng, 0, top);
    if (i % 3 == 0) {  // separated sizes, so the second bound is exercised
      N1 = random_dyadic(rng, std::min(2, top), top);
      N2 = std::max(1.0, N1 / random_dyadic(rng, 2, std::max(2, (int)std::log2(N1))));
    }
    auto [nu, k] = point_in_shell(rng, N1);
    auto [zeta, m] = point_in_shell(rng, N2);
    auto t = FrequencyTriple::make(nu, k, zeta, m);
    double L1 = random_dyadic(rng, 0, 6), L2 = random_dyadic(rng, 0, 6);
    double mu = nu * (nu * nu + double(k) * k) + modulation(rng, L1);
    double eta = zeta * (zeta * zeta + double(m) * m) + modulation(rng, L2);
    auto tt = TimeTriple::make(mu, eta);
    auto& it = items[i];
    it.p = dyadic_profile(t, tt);
    it.xi = t.xi;
    it.n2 = t.n2;
    it.tau = tt.tau;
    Rng mc = rng.split(1);
    it.strict = a_set_measure(t.xi, t.n2, tt.tau, it.p, mc, o.samples);
    Rng mc2 = rng.split(2);
    if (o.relaxed_samples > 0) it.relaxed = a_set_measure(t.xi, t.n2, tt.tau, it.p, mc2, o.relaxed_samples, true);
    std::ostringstream os;
    os << "config " << i << " nu=" << nu << " k2=" << k << " zeta=" << zeta << " m2=" << m << " mu=" << mu
       << " eta=" << eta;
    it.where = os.str();
  });

  ASetSweep out;
  std::map<std::string, BoundReport> worst;
  for (const auto& it : items) {
    auto b = a_set_bounds(it.p, it.xi);
    ++out.configurations;
    if (it.strict.measure > b.minimum()) ++out.violations;
    // ratio to the bound without its constant: compare against c_*
    keep_worst(worst, "trivial", it.strict.measure / (b.trivial / ASetBounds::c_trivial), it.p, it.where);
    if (b.first_applies)
      keep_worst(worst, "first", it.strict.measure / (b.first / ASetBounds::c_first), it.p, it.where);
    if (b.second_applies)
      keep_worst(worst, "second", it.strict.measure / (b.second / ASetBounds::c_second), it.p, it.where);
    if (b.third_applies) {
      keep_worst(worst, "third", it.strict.measure / (b.third / ASetBounds::c_third), it.p, it.where);
      if (o.relaxed_samples > 0) {
        if (it.relaxed.measure > b.third) ++out.relaxed_violations;
        keep_worst(worst, "third_relaxed", it.relaxed.measure / (b.third / ASetBounds::c_third), it.p, it.where);
      }
    }
  }
  for (auto& [name, r] : worst) out.reports.push_back(r);
  return out;
}

std::vector<BoundReport> bilinear_sweep(const BilinearSweepOptions& o) {
  struct Job {
    BilinearVariant v;
    Square R1, R2;
    double L1, L2;
    BilinearOptions opt;
  };
  std::vector<Job> jobs;
  auto at = [](double r, double angle_deg, double side) {
    double a = angle_deg * std::numbers::pi / 180;
    double y = std::round(r * std::sin(a));
    return Square{r * std::cos(a), y - side / 2, side};
  };
  const std::array<std::array<double, 2>, 2> Ls{{{1, 1}, {4, 16}}};
  for (double N : {128.0, 256.0, 512.0, 1024.0})
    for (int mi = 0; mi < (N > 128 ? 2 : 1); ++mi)
      for (auto L : Ls) {
        double M = mi == 0 ? 1.0 : N / 128;
        BilinearOptions opt;
        opt.draws = o.draws;
        opt.cells_per_side = o.cells;
        opt.N = N;
        opt.M = M;
        double side = opt.c * M;
        jobs.push_back({BilinearVariant::general, at(N, 30, side), at(N, 60, side), L[0], L[1], opt});
        jobs.push_back({BilinearVariant::separated, at(N, 30, side), at(2 * N, 30, side), L[0], L[1], opt});
      }
  for (double N : {64.0, 128.0, 256.0})
    for (auto L : Ls) {
      BilinearOptions opt;
      opt.draws = o.draws;
      opt.cells_per_side = o.cells;
      opt.N = N;
      jobs.push_back({BilinearVariant::unit_general, at(1.5 * N, 30, 1), at(1.5 * N, 60, 1), L[0], L[1], opt});
      jobs.push_back(
          {BilinearVariant::unit_separated, at(1.5 * N, 30, 1), at(1.5 * N / 8, 45, 1), L[0], L[1], opt});
    }
  std::vector<BoundReport> out(jobs.size());
  Rng root(o.seed);
  parallel_for(jobs.size(), [&](std::size_t i) {
    Rng rng = root.split(i);
    const auto& j = jobs[i];
    out[i] = bilinear_constant(j.R1, j.R2, j.L1, j.L2, j.v, j.opt, rng);
  });
  return out;
}

}  // namespace zk
