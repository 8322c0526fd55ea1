#include "zk/randomize.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <numbers>
#include <ostream>

#include "zk/errors.hpp"
#include "zk/norms.hpp"
#include "zk/parallel.hpp"
#include "zk/rng.hpp"
#include "zk/solver.hpp"

namespace zk {

void RandomizationParams::validate() const {
  if (!(alpha > 0.5 && alpha < 2)) throw PreconditionError("randomization: alpha must lie in (1/2, 2)");
  if (K_trunc < 4) throw PreconditionError("randomization: K_trunc must be >= 4");
}

namespace {
double g_exp(double y) { return y > 0 ? std::exp(-1.0 / y) : 0.0; }
}  // namespace

double chi0(double x) {
  double y = 1.0 - std::abs(x);
  if (y <= 0) return 0.0;
  if (y >= 1) return 1.0;
  double a = g_exp(y), b = g_exp(1.0 - y);
  return a / (a + b);
}

SpectralField project_pk(const SpectralField& f, const LatticePoint& k) {
  const auto& g = f.grid;
  if (std::abs(k[0]) > g.xi_max - 1 || std::abs(k[1]) > g.k_max)
    throw PreconditionError("project_pk: lattice point outside the grid");
  SpectralField out(g, false);
  for (int j = 0; j < g.n_x1; ++j) {
    double c = chi0(g.xi(j) - k[0]);
    if (c != 0) out.at(j, k[1]) = c * f.at(j, k[1]);
  }
  return out;
}

std::vector<LatticePoint> lattice_points(const FrequencyGrid& g, int K_trunc) {
  int a = std::min(K_trunc, static_cast<int>(std::floor(g.xi_max - 1)));
  int b = std::min(K_trunc, g.k_max);
  std::vector<LatticePoint> out;
  for (int k1 = -a; k1 <= a; ++k1)
    for (int k2 = -b; k2 <= b; ++k2) out.push_back({k1, k2});
  return out;
}

SpectralField randomize_data(const SpectralField& u0, const RandomizationParams& p) {
  p.validate();
  const auto& g = u0.grid;
  int a = std::min(p.K_trunc, static_cast<int>(std::floor(g.xi_max - 1)));
  int b = std::min(p.K_trunc, g.k_max);
  auto gk = [&](int k1, int k2) {
    Rng r(hash_key(p.seed, k1, k2));
    return r.complex_normal();
  };
  SpectralField F(g, false);
  for (int n = -b; n <= b; ++n) {
    std::map<int, cplx> draws;
    for (int j = 0; j < g.n_x1; ++j) {
      double xi = g.xi(j);
      cplx acc = 0;
      for (int k1 = static_cast<int>(std::floor(xi)); k1 <= static_cast<int>(std::floor(xi)) + 1; ++k1) {
        if (std::abs(k1) > a) continue;
        double c = chi0(xi - k1);
        if (c == 0) continue;
        auto it = draws.find(k1);
        if (it == draws.end()) it = draws.emplace(k1, gk(k1, n)).first;
        acc += it->second * c;
      }
      F.at(j, n) = acc * u0.at(j, n);
    }
  }
  return make_real(F);
}

double expected_hs_norm_sq(const SpectralField& u0, double s, int K_trunc) {
  const auto& g = u0.grid;
  int a = std::min(K_trunc, static_cast<int>(std::floor(g.xi_max - 1)));
  int b = std::min(K_trunc, g.k_max);
  double acc = 0;
  for (int j = 1; j < g.n_x1; ++j) {  // the Nyquist column is removed by realification
    double xi = g.xi(j);
    double c2 = 0;
    for (int k1 = -a; k1 <= a; ++k1) c2 += std::pow(chi0(xi - k1), 2);
    for (int n = -b; n <= b; ++n) acc += c2 * std::norm(u0.at(j, n)) * std::pow(1 + xi * xi + double(n) * n, s);
  }
  return 0.5 * acc * g.h() / g.x2_fold;
}

double generic_constant(const SpectralField& u0, double alpha) {
  const auto& g = u0.grid;
  int a = static_cast<int>(std::floor(g.xi_max - 1));
  double best = 0;
  for (int k1 = -a; k1 <= a; ++k1)
    for (int n = -g.k_max; n <= g.k_max; ++n) {
      double m = 0;
      for (int j = 0; j < g.n_x1; ++j) m = std::max(m, chi0(g.xi(j) - k1) * std::abs(u0.at(j, n)));
      best = std::max(best, std::pow(1.0 + double(k1) * k1 + double(n) * n, 0.5 * alpha) * m);
    }
  return best;
}

SpectralField generic_profile(const FrequencyGrid& g, double alpha) {
  SpectralField f(g, true);
  for (int j = 1; j < g.n_x1; ++j)
    for (int n = -g.k_max; n <= g.k_max; ++n) f.at(j, n) = std::pow(bracket(g.xi(j), n), -alpha);
  return f;
}

PicardRemainder first_picard_remainder(const SpectralField& u0w, double T, int n_t) {
  if (T > 1) throw PreconditionError("first_picard_remainder: need T <= 1");
  if (n_t < 2) throw PreconditionError("first_picard_remainder: need at least 2 nodes");
  std::vector<double> t(n_t);
  for (int m = 0; m < n_t; ++m) t[m] = T * m / (n_t - 1);
  std::vector<SpectralField> integ(n_t);
  parallel_for(n_t, [&](std::size_t m) { integ[m] = duhamel_integrand(propagate_linear(u0w, t[m]), t[m]); });
  auto v = duhamel_trapezoid(t, integ);
  for (auto& s : v) s.real_valued = u0w.real_valued;
  PicardRemainder out;
  out.endpoint = v.back();
  out.spacetime = windowed_transform(t, v, Frame::comoving);
  return out;
}

SpectralField first_picard_endpoint_exact(const SpectralField& u0w, double T) {
  const auto& g = u0w.grid;
  FrequencyGrid go(2 * g.xi_max, 2 * g.n_x1, 2 * g.k_max, g.x2_fold);
  struct Mode {
    int j, n;
    double xi, phi;
    cplx a, e;  // amplitude and e^{iT phi}
  };
  std::vector<Mode> modes;
  for (int j = 0; j < g.n_x1; ++j)
    for (int n = -g.k_max; n <= g.k_max; ++n) {
      cplx a = u0w.at(j, n);
      if (a == cplx{}) continue;
      double xi = g.xi(j), ph = dispersion(xi, n);
      modes.push_back({j, n, xi, ph, a, std::polar(1.0, T * ph)});
    }
  std::vector<cplx> acc(go.size());
  for (const auto& p : modes)
    for (const auto& q : modes) {
      double xi = p.xi + q.xi;
      int n = p.n + q.n;
      double D = p.phi + q.phi - dispersion(xi, n);
      cplx E = p.e * q.e * std::polar(1.0, -T * dispersion(xi, n));  // e^{iTD}
      cplx I = std::abs(D * T) < 1e-8 ? cplx(T, 0.5 * D * T * T) : (E - 1.0) / cplx(0, D);
      acc[go.index(p.j + q.j, go.row(n))] += p.a * q.a * I;
    }
  SpectralField out(go, u0w.real_valued);
  double pref = 0.5 * g.h() / (2 * std::numbers::pi);
  for (int j = 0; j < go.n_x1; ++j) {
    double xi = go.xi(j);
    for (int n = -go.k_max; n <= go.k_max; ++n) {
      cplx v = acc[go.index(j, go.row(n))];
      if (v == cplx{}) continue;
      out.at(j, n) = cplx(0, xi) * pref * std::polar(1.0, T * dispersion(xi, n)) * v;
    }
  }
  return out;
}

std::vector<CensusRow> smoothing_census(const CensusOptions& o) {
  std::vector<CensusRow> rows(o.K_list.size() * o.seeds);
  std::vector<SpectralField> data;
  for (int K : o.K_list) {
    FrequencyGrid g(K + 2, static_cast<int>(std::lround(2 * (K + 2) / o.h)), K);
    data.push_back(generic_profile(g, o.alpha));
  }
  parallel_for(rows.size(), [&](std::size_t i) {
    std::size_t ki = i / o.seeds;
    int K = o.K_list[ki];
    std::uint64_t seed = o.base_seed + i % o.seeds;
    RandomizationParams p{o.alpha, seed, K};
    auto u = randomize_data(data[ki], p);
    auto v = first_picard_endpoint_exact(u, o.T);
    rows[i] = {seed, K, o.alpha, o.s, sobolev_norm(u, o.s), sobolev_norm(v, o.s)};
  });
  return rows;
}

void write_smoothing_csv(std::ostream& os, const std::vector<CensusRow>& rows) {
  os << "seed,K_trunc,alpha,s,norm_u0,norm_v1\n" << std::setprecision(12);
  for (const auto& r : rows)
    os << r.seed << ',' << r.K_trunc << ',' << r.alpha << ',' << r.s << ',' << r.norm_u0 << ',' << r.norm_v1 << '\n';
}

}  // namespace zk
