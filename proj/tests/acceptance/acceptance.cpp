// One PASS/FAIL line per criterion.  Usage: zk_acceptance [--criterion N]
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "zk/counterexamples.hpp"
#include "zk/measure.hpp"
#include "zk/norms.hpp"
#include "zk/parallel.hpp"
#include "zk/randomize.hpp"
#include "zk/resonance.hpp"
#include "zk/solver.hpp"

using namespace zk;

namespace {

struct Result {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... a) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, a...);
  return buf;
}

const std::vector<double> kNs{64, 128, 256, 512, 1024};

Result slopes(CounterCase c, std::vector<double> ss, double crit) {
  bool ok = true;
  std::string d;
  for (double s : ss) {
    auto scan = ratio_scan(c, kNs, s, 0.51, 0.01);
    double want = crit - s;
    ok = ok && std::abs(scan.slope - want) <= 0.15;
    d += fmt("s=%.2f slope=%.4f target=%.4f; ", s, scan.slope, want);
  }
  return {ok, d};
}

Result crit1() { return slopes(CounterCase::X, {0.5, 0.6, 0.7}, 0.75); }
Result crit2() { return slopes(CounterCase::Y, {0.3, 0.4}, 0.5); }

Result crit3() {
  const long n = 100000;
  std::vector<Verdict> loc(n), coro(n);
  Rng root(3);
  parallel_for(n, [&](std::size_t i) {
    Rng rng = root.split(i);
    auto s = sample_localization(rng, 1, 1e6);
    loc[i] = localization_check(s.w1, s.w2, s.w3, s.eps);
    coro[i] = coro_lower_bound_check(sample_coro_triple(rng, 1 << 14), 4096.0);
  });
  auto count = [](const std::vector<Verdict>& v, Verdict x) { return (long)std::count(v.begin(), v.end(), x); };
  long lv = count(loc, Verdict::violated), cv = count(coro, Verdict::violated);
  long lh = count(loc, Verdict::holds), ch = count(coro, Verdict::holds);
  // checks whose preconditions fail do not count as evidence
  bool ok = lv == 0 && cv == 0 && lh >= 0.9 * n && ch >= 0.9 * n;
  return {ok, fmt("localization: %ld holds, %ld violated; lower bound: %ld holds, %ld violated (of %ld each)", lh, lv,
                  ch, cv, n)};
}

Result crit4() {
  const long n = 100000;
  std::vector<int> tag(n), viol(n);
  Rng root(4);
  parallel_for(n, [&](std::size_t i) {
    Rng rng = root.split(i);
    auto t = sample_mixture_triple(rng, 1 << 14);
    auto c = classify(t);
    tag[i] = static_cast<int>(c.tag);
    bool one = c.tag == Classification::Tag::bad ||
               (c.tag == Classification::Tag::m_interaction && (c.kind == 1 || c.kind == 2) && c.M > 0);
    viol[i] = !one || (c.tag == Classification::Tag::bad && !in_bad_box(t));
  });
  long v = std::count(viol.begin(), viol.end(), 1);
  long bad = std::count(tag.begin(), tag.end(), (int)Classification::Tag::bad);
  return {v == 0, fmt("%ld triples, %ld Bad, %ld violations", n, bad, v)};
}

Result crit5() {
  LevelSetSweepOptions lo;
  auto ls = level_set_sweep(lo);
  ASetSweepOptions ao;
  auto as = a_set_sweep(ao);
  bool ok = ls.worst_shape_spread <= 2 && ls.C_emp <= ls.ceiling && as.violations == 0 && as.relaxed_violations == 0;
  return {ok, fmt("%zu profiles x %d lambdas: C_emp=%.4g spread=%.3f ceiling=%.4g; A-sets: %ld configs, %ld violations, "
                  "%ld relaxed violations",
                  ls.profiles.size(), lo.lambdas, ls.C_emp, ls.worst_shape_spread, ls.ceiling, as.configurations,
                  as.violations, as.relaxed_violations)};
}

Result crit6() {
  FrequencyGrid g(8.0, 256, 16);
  auto u0 = gaussian_data(g, 1e-2);
  double T = 0.1;
  int steps = 1024;
  double dt = T / steps;
  auto p = picard_solve(u0, T, dt, 60, 1e-14);
  auto r = rk4_solve(u0, T, dt, steps);
  auto rep = conserved_report(p);
  double diff = h1_norm(p.states.back() - r.states.back()) / h1_norm(r.states.back());
  bool ok = rep.mass_drift <= 1e-6 && rep.energy_drift <= 1e-6 && rep.line_mass_drift <= 1e-8 && diff <= 1e-6;
  return {ok, fmt("mass drift %.3g, energy drift %.3g, zero column drift %.3g, RK4 relative difference %.3g",
                  rep.mass_drift, rep.energy_drift, rep.line_mass_drift, diff)};
}

Result crit7() {
  Rng rng(7);
  double worst = 0;
  for (int i = 0; i < 10000; ++i) {
    double nu = rng.uniform(-100, 100), zeta = rng.uniform(-100, 100);
    long k = rng.integer(-100, 100), m = rng.integer(-100, 100);
    double e = 1e-3;
    double d = (triple_delta(FrequencyTriple::make(nu + e, k, zeta, m)) -
                triple_delta(FrequencyTriple::make(nu - e, k, zeta, m))) / (2 * e);
    auto th = thetas(FrequencyTriple::make(nu, k, zeta, m));
    double want = th[0] * th[0] - th[2] * th[2];
    worst = std::max(worst, std::abs(d - want) / std::max(std::abs(want), 1.0));
  }
  long nonzero = 0;
  for (long p = 2; p <= 4096; p += 2)
    if (triple_delta(axis_triangle(p, 0, 0)) != 0) ++nonzero;
  Rng r2(8);
  double C = measure_bad_expansion_constant(r2, 100000, 1024);
  bool ok = worst <= 1e-6 && nonzero == 0 && C <= 10;
  return {ok, fmt("derivative rel err %.3g; %ld nonzero vertex values; C_err=%.4f", worst, nonzero, C)};
}

Result crit8() {
  FrequencyGrid g(10.0, 40, 10);
  double alpha = 0.97, s = alpha - 1 - 0.1;
  auto u = generic_profile(g, alpha);
  double want = expected_hs_norm_sq(u, s, 8);
  int seeds = 200;
  std::vector<double> v(seeds);
  parallel_for(seeds, [&](std::size_t i) {
    v[i] = std::pow(sobolev_norm(randomize_data(u, {alpha, std::uint64_t(i + 1), 8}), s), 2);
  });
  double mean = 0;
  for (double x : v) mean += x / seeds;
  double relerr = std::abs(mean - want) / want;

  CensusOptions o;
  auto rows = smoothing_census(o);
  auto median = [&](int K, bool data) {
    std::vector<double> x;
    for (const auto& r : rows)
      if (r.K_trunc == K) x.push_back(data ? r.norm_u0 : r.norm_v1);
    std::sort(x.begin(), x.end());
    return x[x.size() / 2];
  };
  double growth = 0;
  bool data_grows = true;
  std::string d = fmt("oracle rel err %.4f; census medians:", relerr);
  for (std::size_t i = 0; i < o.K_list.size(); ++i) {
    int K = o.K_list[i];
    d += fmt(" K=%d u0=%.4g v1=%.4g", K, median(K, true), median(K, false));
    if (i > 0) {
      growth = std::max(growth, median(K, false) / median(o.K_list[i - 1], false));
      data_grows = data_grows && median(K, true) > median(o.K_list[i - 1], true);
    }
  }
  d += fmt("; remainder growth %.3f", growth);
  return {relerr <= 0.1 && growth <= 2 && data_grows, d};
}

const std::vector<std::pair<const char*, std::function<Result()>>> kCriteria{
    {"counterexample X slopes", crit1}, {"counterexample Y slopes", crit2},
    {"resonance lemma suite", crit3},   {"partition totality", crit4},
    {"measure bounds", crit5},          {"solver conservation", crit6},
    {"Delta calculus", crit7},          {"randomization census", crit8}};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i + 1 < argc; ++i)
    if (!std::strcmp(argv[i], "--criterion")) only = std::atoi(argv[i + 1]);
  bool all = true;
  for (std::size_t i = 0; i < kCriteria.size(); ++i) {
    if (only && (int)i + 1 != only) continue;
    auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
      r = kCriteria[i].second();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %zu (%s): %s [%.1fs]\n", r.pass ? "PASS" : "FAIL", i + 1, kCriteria[i].first,
                r.detail.c_str(), sec);
    std::fflush(stdout);
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
