#include "zk/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "zk/config.hpp"
#include "zk/counterexamples.hpp"
#include "zk/errors.hpp"
#include "zk/field_io.hpp"
#include "zk/measure.hpp"
#include "zk/norms.hpp"
#include "zk/parallel.hpp"
#include "zk/randomize.hpp"
#include "zk/resonance.hpp"
#include "zk/solver.hpp"
#include "zk/spacetime.hpp"

namespace zk {

namespace fs = std::filesystem;

namespace {

struct Ctx {
  Config cfg;
  fs::path out;
  std::optional<std::uint64_t> seed;

  // --seed wins over the config and is recorded in the echo
  std::uint64_t seed_or(const std::string& key, std::uint64_t fallback) {
    if (seed) cfg.set(key, std::to_string(*seed));
    return cfg.u64(key, fallback);
  }

  std::ofstream open(const std::string& name) const {
    std::ofstream f(out / name);
    if (!f) throw ConfigError("cannot write " + (out / name).string());
    return f;
  }
};

std::vector<int> ints(const std::vector<double>& v) {
  std::vector<int> r;
  for (double x : v) r.push_back(static_cast<int>(std::lround(x)));
  return r;
}

// --- simulate -------------------------------------------------------------------

void cmd_simulate(Ctx& c) {
  const auto& k = c.cfg;
  FrequencyGrid g(k.real("simulate.xi_max", 8.0), (int)k.integer("simulate.n_x1", 256),
                  (int)k.integer("simulate.k_max", 16));
  double T = k.real("simulate.T", 0.1);
  double dt = k.real("simulate.dt", T / 1024);
  auto u0 = gaussian_data(g, k.real("simulate.amplitude", 1e-2), k.real("simulate.width", 1.0));
  auto traj = picard_solve(u0, T, dt, (int)k.integer("simulate.max_iter", 60), k.real("simulate.tol", 1e-13));
  auto rep = conserved_report(traj);
  {
    auto f = c.open("conserved.csv");
    write_conserved_csv(f, traj);
  }
  long stride = std::max(1L, k.integer("simulate.dump_stride", 64));
  FieldDump d;
  d.grid = g;
  for (std::size_t i = 0; i < traj.states.size(); i += stride) {
    d.times.push_back(traj.times[i]);
    d.states.push_back(traj.states[i]);
  }
  if ((traj.states.size() - 1) % stride != 0) {
    d.times.push_back(traj.times.back());
    d.states.push_back(traj.states.back());
  }
  save_dump((c.out / "trajectory.bin").string(), d);

  double oracle_diff = -1;
  if (k.integer("simulate.oracle", 1)) {
    auto rk = rk4_solve(u0, T, dt, static_cast<int>(traj.states.size() - 1));
    auto diff = rk.states.back() - traj.states.back();
    oracle_diff = h1_norm(diff) / h1_norm(rk.states.back());
  }
  auto f = c.open("summary.csv");
  f << std::setprecision(10) << "method,iterations,last_increment,mass_drift,energy_drift,line_mass_drift,oracle_rel_diff\n"
    << traj.meta.method << ',' << traj.meta.iterations << ',' << traj.meta.last_increment << ',' << rep.mass_drift
    << ',' << rep.energy_drift << ',' << rep.line_mass_drift << ',' << oracle_diff << '\n';
}

// --- norms ----------------------------------------------------------------------

void cmd_norms(Ctx& c) {
  const auto& k = c.cfg;
  auto d = load_dump(k.str("norms.dump"));
  NormParams p;
  p.s = k.real("norms.s", 0.0);
  p.b = k.real("norms.b", 0.5);
  p.delta = k.real("norms.delta", 0.0);
  p.validate();
  std::vector<NormRecord> rows;
  const auto& last = d.states.back();
  rows.push_back({"sobolev", p.s, 0, 0, sobolev_norm(last, p.s)});
  rows.push_back({"homogeneous_sobolev", p.s, 0, 0, homogeneous_sobolev_norm(last, p.s)});
  rows.push_back({"tilde_sobolev", p.s, 0, 0, tilde_sobolev_norm(last, p.s)});
  if (d.states.size() >= 2) {
    auto st = windowed_transform(d.times, d.states, Frame::lab, (int)k.integer("norms.n_tau_min", 0));
    rows.push_back({"xsb", p.s, p.b, 0, xsb_norm(st, p)});
    NormParams y = p;
    y.gamma = 0.5;
    rows.push_back({"ysb", p.s, p.b, 0.5, ysb_norm(st, y)});
    auto z = zsb_norm(st, p);
    rows.push_back({"zsb", p.s, p.b, 0, z.total});
    rows.push_back({"zsb_sup_term", p.s, p.b, 0, z.sup_term});
  }
  auto f = c.open("norms.csv");
  write_norm_csv(f, rows);
}

// --- classify -------------------------------------------------------------------

std::vector<long> parse_longs(const std::string& s, const char* key) {
  std::vector<long> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      v.push_back(std::stol(tok));
    } catch (...) {
      throw ConfigError(std::string("config: bad value for '") + key + "'");
    }
  }
  return v;
}

void cmd_classify(Ctx& c) {
  const auto& k = c.cfg;
  ResonanceConstants rc;
  rc.C = k.real("classify.C", rc.C);
  rc.C2 = k.real("classify.C2", rc.C2);
  rc.c = k.real("classify.c", rc.c);
  rc.beta = k.real("classify.beta", rc.beta);
  Census census;
  long bad_box_violations = 0, total = 0;
  if (k.has("classify.triple")) {
    auto v = parse_longs(k.str("classify.triple"), "classify.triple");
    if (v.size() != 4) throw ConfigError("config: 'classify.triple' needs nu,k2,zeta,m2");
    auto t = FrequencyTriple::make(double(v[0]), v[1], double(v[2]), v[3]);
    auto cl = classify(t, rc);
    census.add(cl);
    ++total;
    if (cl.tag == Classification::Tag::bad && !in_bad_box(t)) ++bad_box_violations;
  } else {
    long n = k.integer("classify.samples", 10000);
    double N_min = k.real("classify.N_min", 1 << 14);
    std::string sampler = k.str("classify.sampler", "mixture");
    if (sampler != "mixture" && sampler != "annulus" && sampler != "coro")
      throw ConfigError("config: 'classify.sampler' must be mixture, annulus or coro");
    Rng root(c.seed_or("classify.seed", 1));
    std::vector<Classification> out(n);
    std::vector<char> viol(n, 0);
    parallel_for(n, [&](std::size_t i) {
      Rng rng = root.split(i);
      FrequencyTriple t = sampler == "annulus" ? sample_annulus_triple(rng, N_min)
                          : sampler == "coro"  ? sample_coro_triple(rng, N_min)
                                               : sample_mixture_triple(rng, N_min);
      out[i] = classify(t, rc);
      viol[i] = out[i].tag == Classification::Tag::bad && !in_bad_box(t);
    });
    for (long i = 0; i < n; ++i) {
      census.add(out[i]);
      bad_box_violations += viol[i];
    }
    total = n;
  }
  auto f = c.open("census.csv");
  write_census_csv(f, census);
  auto s = c.open("classify_summary.csv");
  s << "samples,bad_box_violations\n" << total << ',' << bad_box_violations << '\n';
}

// --- verify-lemma ---------------------------------------------------------------

void write_verdicts(Ctx& c, const std::string& lemma, long n, const std::array<long, 3>& counts) {
  auto f = c.open("lemma.csv");
  f << "lemma,samples,holds,violated,precondition_failed\n"
    << lemma << ',' << n << ',' << counts[0] << ',' << counts[1] << ',' << counts[2] << '\n';
}

void cmd_lemma(Ctx& c, const std::string& which) {
  const auto& k = c.cfg;
  if (which == "localization" || which == "coro") {
    long n = k.integer(which + ".samples", 100000);
    Rng root(c.seed_or(which + ".seed", 3));
    std::vector<Verdict> v(n);
    if (which == "localization") {
      double lo = k.real("localization.r_lo", 1.0), hi = k.real("localization.r_hi", 1e4);
      parallel_for(n, [&](std::size_t i) {
        Rng rng = root.split(i);
        auto s = sample_localization(rng, lo, hi);
        v[i] = localization_check(s.w1, s.w2, s.w3, s.eps);
      });
    } else {
      double N_min = k.real("coro.N_min", 1 << 14), C = k.real("coro.C", 4096.0);
      parallel_for(n, [&](std::size_t i) {
        Rng rng = root.split(i);
        v[i] = coro_lower_bound_check(sample_coro_triple(rng, N_min), C);
      });
    }
    std::array<long, 3> counts{};
    for (auto x : v) ++counts[static_cast<int>(x)];
    write_verdicts(c, which, n, counts);
    return;
  }
  if (which == "sweden") {
    LevelSetSweepOptions o;
    o.shapes = (int)k.integer("sweden.shapes", o.shapes);
    o.scales = k.reals("sweden.scales", o.scales);
    o.lambdas = (int)k.integer("sweden.lambdas", o.lambdas);
    o.delta = k.real("sweden.delta", o.delta);
    o.seed = c.seed_or("sweden.seed", o.seed);
    auto r = level_set_sweep(o);
    std::vector<BoundReport> rows;
    for (const auto& p : r.profiles) {
      BoundReport b;
      b.bound_name = "level_set_shape" + std::to_string(p.shape);
      b.empirical_constant = p.constant;
      b.N = p.N;
      b.M = p.M3;
      b.L1 = b.L2 = 1;
      rows.push_back(b);
    }
    auto f = c.open("bounds.csv");
    write_bound_csv(f, rows);
    auto s = c.open("sweden_summary.csv");
    s << std::setprecision(10) << "C_emp,worst_shape_spread,ceiling\n"
      << r.C_emp << ',' << r.worst_shape_spread << ',' << r.ceiling << '\n';
    return;
  }
  if (which == "abounds") {
    ASetSweepOptions o;
    o.configurations = (int)k.integer("abounds.configurations", o.configurations);
    o.samples = k.integer("abounds.samples", o.samples);
    o.relaxed_samples = k.integer("abounds.relaxed_samples", o.relaxed_samples);
    o.max_norm = k.real("abounds.max_norm", o.max_norm);
    o.seed = c.seed_or("abounds.seed", o.seed);
    auto r = a_set_sweep(o);
    auto f = c.open("bounds.csv");
    write_bound_csv(f, r.reports);
    auto s = c.open("abounds_summary.csv");
    s << "configurations,violations,relaxed_violations\n"
      << r.configurations << ',' << r.violations << ',' << r.relaxed_violations << '\n';
    return;
  }
  if (which == "bilinear") {
    BilinearSweepOptions o;
    o.draws = (int)k.integer("bilinear.draws", o.draws);
    o.cells = (int)k.integer("bilinear.cells", o.cells);
    o.seed = c.seed_or("bilinear.seed", o.seed);
    auto f = c.open("bounds.csv");
    write_bound_csv(f, bilinear_sweep(o));
    return;
  }
  throw ConfigError("unknown lemma '" + which + "'");
}

// --- counterexample -------------------------------------------------------------

void cmd_counterexample(Ctx& c, const std::string& which) {
  const auto& k = c.cfg;
  CounterCase cc = which == "x" ? CounterCase::X : CounterCase::Y;
  double s = k.real("counterexample.s", cc == CounterCase::X ? 0.6 : 0.4);
  double delta = k.real("counterexample.delta", 0.01);
  double b = k.real("counterexample.b", 0.5 + delta);
  auto Ns = k.reals("counterexample.N_list", {64, 128, 256, 512, 1024});
  QuadratureResolution q;
  q.rho_panels = (int)k.integer("counterexample.rho_panels", q.rho_panels);
  q.nu_panels = (int)k.integer("counterexample.nu_panels", q.nu_panels);
  q.sigma_panels = (int)k.integer("counterexample.sigma_panels", q.sigma_panels);
  auto scan = ratio_scan(cc, Ns, s, b, delta, k.real("counterexample.C_mod", 8.0), q);
  auto f = c.open("ratios.csv");
  write_ratio_csv(f, scan);
}

// --- random-experiment ----------------------------------------------------------

void cmd_random(Ctx& c) {
  const auto& k = c.cfg;
  CensusOptions o;
  o.alpha = k.real("random.alpha", o.alpha);
  o.s = k.real("random.s", o.s);
  o.T = k.real("random.T", o.T);
  o.h = k.real("random.h", o.h);
  o.K_list = ints(k.reals("random.K_list", {8, 16, 32}));
  o.seeds = (int)k.integer("random.seeds", o.seeds);
  o.base_seed = c.seed_or("random.seed", o.base_seed);
  auto rows = smoothing_census(o);
  auto f = c.open("smoothing.csv");
  write_smoothing_csv(f, rows);
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"zklab: numerical experiments for the Zakharov-Kuznetsov equation on R x T"};
  std::string config_path, out_dir = ".";
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "config file (INI sections per subcommand)");
  app.add_option("--out", out_dir, "output directory");
  auto* seed_opt = app.add_option("--seed", seed, "overrides every seed in the config");
  app.require_subcommand(1);
  auto* simulate = app.add_subcommand("simulate", "solve with Picard iteration and report conserved quantities");
  auto* norms = app.add_subcommand("norms", "evaluate norms of a dumped field or trajectory");
  auto* cls = app.add_subcommand("classify", "resonance census over sampled triples");
  std::string lemma, which;
  auto* lem = app.add_subcommand("verify-lemma", "measure and resonance sweeps");
  lem->add_option("lemma", lemma)
      ->required()
      ->check(CLI::IsMember({"localization", "coro", "sweden", "abounds", "bilinear"}));
  auto* cex = app.add_subcommand("counterexample", "ratio scan of the bilinear counterexamples");
  cex->add_option("case", which)->required()->check(CLI::IsMember({"x", "y"}));
  auto* rnd = app.add_subcommand("random-experiment", "randomized data smoothing census");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    Ctx c;
    if (!config_path.empty()) c.cfg = Config::load(config_path);
    if (*seed_opt) c.seed = seed;
    c.out = out_dir;
    std::error_code ec;
    fs::create_directories(c.out, ec);
    if (ec) throw ConfigError("cannot create output directory " + out_dir);

    unsigned threads = static_cast<unsigned>(c.cfg.integer("threads", 0));
    if (const char* env = std::getenv("ZK_THREADS")) {
      try {
        threads = static_cast<unsigned>(std::stoul(env));
      } catch (...) {
        throw ConfigError("ZK_THREADS is not a number");
      }
      c.cfg.set("threads", env);
    }
    set_thread_count(threads);

    if (*simulate) cmd_simulate(c);
    else if (*norms) cmd_norms(c);
    else if (*cls) cmd_classify(c);
    else if (*lem) cmd_lemma(c, lemma);
    else if (*cex) cmd_counterexample(c, which);
    else if (*rnd) cmd_random(c);

    auto f = c.open("resolved_config.ini");
    c.cfg.echo(f);
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "zklab: " << e.what() << '\n';
    return 1;
  } catch (const NumericalFailure& e) {
    std::cerr << "zklab: numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "zklab: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace zk
