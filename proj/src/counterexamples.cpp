#include "zk/counterexamples.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include <boost/math/quadrature/gauss.hpp>

#include "zk/errors.hpp"
#include "zk/resonance.hpp"

namespace zk {

namespace {

struct Nodes {
  std::vector<double> x, w;
};

// composite 8-point Gauss-Legendre on the pieces of [cuts]
Nodes composite(const std::vector<double>& cuts, int panels_total) {
  using G = boost::math::quadrature::gauss<double, 8>;
  const auto& ab = G::abscissa();
  const auto& wt = G::weights();
  Nodes n;
  double span = cuts.back() - cuts.front();
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    double a = cuts[c], b = cuts[c + 1];
    if (!(b > a)) continue;
    int panels = std::max(1, static_cast<int>(std::lround(panels_total * (b - a) / span)));
    double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
      double mid = a + (p + 0.5) * h, half = 0.5 * h;
      for (std::size_t i = 0; i < ab.size(); ++i) {
        if (ab[i] == 0) {
          n.x.push_back(mid);
          n.w.push_back(wt[i] * half);
          continue;
        }
        n.x.push_back(mid - ab[i] * half);
        n.w.push_back(wt[i] * half);
        n.x.push_back(mid + ab[i] * half);
        n.w.push_back(wt[i] * half);
      }
    }
  }
  return n;
}

double low_weight(double x, double gamma) {
  if (gamma == 0) return 1.0;
  return std::pow(std::sqrt(1.0 + x * x) / std::abs(x), 2.0 * gamma);
}

double mod_integral(double C, double b) {
  auto n = composite({-C, 0.0, C}, 64);
  double s = 0;
  for (std::size_t i = 0; i < n.x.size(); ++i) s += n.w[i] * std::pow(1.0 + n.x[i] * n.x[i], b);
  return s;
}

}  // namespace

PairSupports pair_supports(CounterCase c, double N) {
  if (c == CounterCase::X) {
    double r = 1.0 / std::sqrt(N);
    return {-r, r, -r, r};
  }
  return {0.5 - 0.5 / N, 0.5 + 0.5 / N, -0.25 - 1.0 / N, -0.25 + 1.0 / N};
}

double max_resolving_step(CounterCase c, double N) {
  return c == CounterCase::X ? 1.0 / (8.0 * std::sqrt(N)) : 1.0 / (8.0 * N);
}

std::pair<SpaceTimeField, SpaceTimeField> build_pair(CounterCase c, int N, double C_mod, double h, int tau_cells) {
  if (N < 64 || N % 2 != 0) throw PreconditionError("build_pair: need N >= 64 and even");
  if (!(C_mod > 0)) throw PreconditionError("build_pair: C_mod must be positive");
  double hmax = max_resolving_step(c, N);
  if (h == 0) h = hmax;
  if (h > hmax * (1 + 1e-12)) throw PreconditionError("build_pair: grid too coarse to resolve R1");
  auto R = pair_supports(c, N);
  double ht = C_mod / tau_cells;
  int ntau = 2 * tau_cells + 1;
  auto make = [&](double lo, double hi, int n2, double shift) {
    int nx = static_cast<int>(std::floor((hi - lo) / h + 1e-9));
    if (nx < 1) throw PreconditionError("build_pair: support empty on the grid");
    double start = lo + 0.5 * ((hi - lo) - (nx - 1) * h);
    SpaceTimeField f(start + shift, h, nx, n2, 1, ht, ntau, Frame::comoving);
    for (int j = 0; j < nx; ++j)
      for (int l = 0; l < ntau; ++l) f.at(j, 0, l) = std::abs(f.tau(l)) <= C_mod * (1 + 1e-12) ? 1.0 : 0.0;
    return f;
  };
  return {make(R.r1_lo, R.r1_hi, N, 0.0), make(R.r2_lo, R.r2_hi, -N / 2, -0.5 * N)};
}

/*
 * d_x(uv)^ at (xi', N/2) with xi' = -N/2 - rho is
 *   i xi' int_{R1} 1_{R2}(-rho - nu) T(sigma - Delta) dnu,   T(x) = max(0, 2C - |x|),
 * sigma the output modulation; the mu-convolution of the two indicators is T.
 */
RatioRow ratio_at(CounterCase c, double N, double s, double b, double delta, double C_mod,
                  const QuadratureResolution& q, double amp_u, double amp_v) {
  auto R = pair_supports(c, N);
  double gin = c == CounterCase::Y ? 0.5 : 0.0;
  double gout = c == CounterCase::Y ? -0.5 : 0.0;
  double bout = b - 1.0 + delta;
  double C = C_mod;

  // inputs
  auto nu_in = composite({R.r1_lo, R.r1_hi}, q.nu_panels);
  auto om_in = composite({R.r2_lo, R.r2_hi}, q.nu_panels);
  double su = 0, sv = 0;
  for (std::size_t i = 0; i < nu_in.x.size(); ++i) {
    double x = nu_in.x[i];
    su += nu_in.w[i] * std::pow(1.0 + x * x + N * N, s) * low_weight(x, gin);
  }
  for (std::size_t i = 0; i < om_in.x.size(); ++i) {
    double x = om_in.x[i] - 0.5 * N;
    sv += om_in.w[i] * std::pow(1.0 + x * x + 0.25 * N * N, s) * low_weight(x, gin);
  }
  double mb = mod_integral(C, b);
  double norm_u = std::abs(amp_u) * std::sqrt(su * mb), norm_v = std::abs(amp_v) * std::sqrt(sv * mb);

  // output: rho in -(R1 + R2)
  double rlo = -(R.r1_hi + R.r2_hi), rhi = -(R.r1_lo + R.r2_lo);
  auto rho = composite({rlo, rhi}, q.rho_panels);
  std::vector<std::vector<double>> deltas(rho.x.size()), dw(rho.x.size());
  double dmin = 0, dmax = 0;
  for (std::size_t a = 0; a < rho.x.size(); ++a) {
    double r = rho.x[a];
    double lo = std::max(R.r1_lo, -r - R.r2_hi), hi = std::min(R.r1_hi, -r - R.r2_lo);
    if (!(hi > lo)) continue;
    auto nn = composite({lo, hi}, q.nu_panels);
    for (std::size_t i = 0; i < nn.x.size(); ++i) {
      double nu = nn.x[i], om = -r - nu;
      double d = triple_delta(FrequencyTriple::make(nu, static_cast<long>(N), om - 0.5 * N, -static_cast<long>(N / 2)));
      deltas[a].push_back(d);
      dw[a].push_back(nn.w[i]);
      dmin = std::min(dmin, d);
      dmax = std::max(dmax, d);
    }
  }
  double slo = std::min(dmin - 2 * C, -C), shi = std::max(dmax + 2 * C, C);
  auto sig = composite({slo, -C, C, shi}, q.sigma_panels);
  double acc = 0, mass = 0, mass_box = 0;
  for (std::size_t a = 0; a < rho.x.size(); ++a) {
    double xi = -0.5 * N - rho.x[a];
    double wsp = std::pow(1.0 + xi * xi + 0.25 * N * N, s) * low_weight(xi, gout) * xi * xi;
    double inner = 0, m = 0, mbx = 0;
    for (std::size_t l = 0; l < sig.x.size(); ++l) {
      double sg = sig.x[l];
      double F = 0;
      for (std::size_t i = 0; i < deltas[a].size(); ++i) F += dw[a][i] * std::max(0.0, 2 * C - std::abs(sg - deltas[a][i]));
      double F2 = F * F;
      inner += sig.w[l] * std::pow(1.0 + sg * sg, bout) * F2;
      m += sig.w[l] * F2;
      if (std::abs(sg) <= C) mbx += sig.w[l] * F2;
    }
    acc += rho.w[a] * wsp * inner;
    mass += rho.w[a] * xi * xi * m;
    mass_box += rho.w[a] * xi * xi * mbx;
  }
  RatioRow row;
  row.N = N;
  row.lhs = std::abs(amp_u * amp_v) * std::sqrt(acc);
  row.rhs = norm_u * norm_v;
  row.ratio = row.lhs / row.rhs;
  row.box_fraction = mass > 0 ? mass_box / mass : 0;
  return row;
}

RatioScan ratio_scan(CounterCase c, const std::vector<double>& N_list, double s, double b, double delta,
                     double C_mod, const QuadratureResolution& q) {
  if (N_list.size() < 3) throw PreconditionError("ratio_scan: need at least 3 values of N");
  for (double N : N_list)
    if (N < 64 || std::fmod(N, 2.0) != 0) throw PreconditionError("ratio_scan: N must be even and >= 64");
  RatioScan scan;
  scan.which = c;
  scan.s = s;
  scan.b = b;
  scan.delta = delta;
  scan.C_mod = C_mod;
  scan.rows.resize(N_list.size());
  for (std::size_t i = 0; i < N_list.size(); ++i) scan.rows[i] = ratio_at(c, N_list[i], s, b, delta, C_mod, q);
  double n = static_cast<double>(N_list.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : scan.rows) {
    double x = std::log2(r.N), y = std::log2(r.ratio);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double den = n * sxx - sx * sx;
  if (den == 0) throw PreconditionError("ratio_scan: degenerate fit");
  scan.slope = (n * sxy - sx * sy) / den;
  scan.intercept = (sy - scan.slope * sx) / n;
  for (const auto& r : scan.rows)
    scan.max_residual =
        std::max(scan.max_residual, std::abs(std::log2(r.ratio) - scan.intercept - scan.slope * std::log2(r.N)));
  return scan;
}

void write_ratio_csv(std::ostream& os, const RatioScan& scan) {
  const char* name = scan.which == CounterCase::X ? "X" : "Y";
  os << "case,N,s,b,delta,ratio\n" << std::setprecision(12);
  for (const auto& r : scan.rows)
    os << name << ',' << r.N << ',' << scan.s << ',' << scan.b << ',' << scan.delta << ',' << r.ratio << '\n';
  os << "# slope=" << scan.slope << " intercept=" << scan.intercept << " max_residual=" << scan.max_residual << '\n';
}

}  // namespace zk
