#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "zk/dyadic.hpp"
#include "zk/errors.hpp"
#include "zk/measure.hpp"

namespace zk {

namespace {

using cplx = std::complex<double>;

double phi(double x, double y) { return x * (x * x + y * y); }
double phi_x(double x, double y) { return 3 * x * x + y * y; }

// u^ constant on cells [x0 + i hx, +hx) x [-2L + s hs, +hs) of each integer row
struct Side {
  double x0, hx;
  int nx;
  std::vector<long> rows;
  double L, hs;
  int ns;
  std::vector<cplx> amp;  // (row, i, s)
  cplx& a(int r, int i, int s) { return amp[(static_cast<std::size_t>(r) * nx + i) * ns + s]; }
  cplx a(int r, int i, int s) const { return amp[(static_cast<std::size_t>(r) * nx + i) * ns + s]; }
  double sigma0(int s) const { return -2 * L + s * hs; }
};

Side make_side(const Square& R, double L, int cells) {
  Side d;
  d.x0 = R.x0;
  d.nx = cells;
  d.hx = R.side / cells;
  for (long k = static_cast<long>(std::ceil(R.y0)); k < R.y0 + R.side; ++k) d.rows.push_back(k);
  d.L = L;
  d.ns = cells;
  d.hs = 4 * L / cells;
  d.amp.assign(d.rows.size() * d.nx * d.ns, cplx{});
  return d;
}

// sum_{s,t} a_s b_t (box_s * box_t)(x): piecewise linear on x0 + q h
struct Kernel {
  double x0 = 0, h = 1;
  std::vector<cplx> val, cum;  // node values and antiderivative at nodes

  cplx integral_to(double x) const {
    double t = (x - x0) / h;
    if (t <= 0) return 0;
    auto Q = static_cast<long>(val.size()) - 1;
    if (t >= Q) return cum.back();
    long q = static_cast<long>(t);
    double d = (t - q) * h;
    return cum[q] + val[q] * d + (val[q + 1] - val[q]) * (d * d / (2 * h));
  }
  cplx at(double x) const {
    double t = (x - x0) / h;
    auto Q = static_cast<long>(val.size()) - 1;
    if (t <= 0 || t >= Q) return 0;
    long q = static_cast<long>(t);
    double f = t - q;
    return val[q] * (1 - f) + val[q + 1] * f;
  }
  double lo() const { return x0; }
  double hi() const { return x0 + h * (val.size() - 1); }
};

// trapezoid box(w1) * box(w2) starting at 0
double trapezoid(double x, double w1, double w2) {
  double a = std::min(w1, w2), b = std::max(w1, w2);
  if (x <= 0 || x >= a + b) return 0;
  if (x < a) return x;
  if (x <= b) return a;
  return a + b - x;
}

Kernel make_kernel(const Side& A, int ra, int i, const Side& B, int rb, int j) {
  Kernel k;
  k.h = std::min(A.hs, B.hs);
  k.x0 = -2 * A.L - 2 * B.L;
  long Q = std::lround((4 * A.L + 4 * B.L) / k.h);
  k.val.assign(Q + 1, cplx{});
  for (int s = 0; s < A.ns; ++s) {
    cplx as = A.a(ra, i, s);
    for (int t = 0; t < B.ns; ++t) {
      cplx ab = as * B.a(rb, j, t);
      double start = A.sigma0(s) + B.sigma0(t);
      long q0 = std::lround((start - k.x0) / k.h), q1 = std::lround((start + A.hs + B.hs - k.x0) / k.h);
      for (long q = q0; q <= q1; ++q) k.val[q] += ab * trapezoid(k.x0 + q * k.h - start, A.hs, B.hs);
    }
  }
  k.cum.assign(Q + 1, cplx{});
  for (long q = 1; q <= Q; ++q) k.cum[q] = k.cum[q - 1] + 0.5 * k.h * (k.val[q - 1] + k.val[q]);
  return k;
}

// int K(tau - g(nu)) dnu over a piece on which g is taken linear
struct Piece {
  const Kernel* K;
  double gm, half;  // centre phase, |g'| l / 2
  double len, slope;

  cplx at(double tau) const {
    if (half <= 1e-12 * K->h) return len * K->at(tau - gm);
    return (K->integral_to(tau - gm + half) - K->integral_to(tau - gm - half)) / slope;
  }
  double lo() const { return gm - half + K->lo(); }
  double hi() const { return gm + half + K->hi(); }
};

// int |sum of pieces|^2 dtau, exact for piecewise quadratic sums
double tau_norm_sq(const std::vector<Piece>& pieces) {
  if (pieces.empty()) return 0;
  std::vector<double> br;
  for (const auto& p : pieces) {
    long Q = static_cast<long>(p.K->val.size()) - 1;
    for (long q = 0; q <= Q; ++q) {
      double x = p.K->x0 + q * p.K->h;
      br.push_back(p.gm - p.half + x);
      if (p.half > 1e-12 * p.K->h) br.push_back(p.gm + p.half + x);
    }
  }
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end(), [](double a, double b) { return b - a <= 1e-12 * (1 + std::abs(a)); }),
           br.end());
  std::size_t nseg = br.size() - 1;
  if (nseg == 0) return 0;
  static const double gx[3] = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
  static const double gw[3] = {5.0 / 9, 8.0 / 9, 5.0 / 9};
  std::vector<cplx> f(nseg * 3, cplx{});
  for (const auto& p : pieces) {
    std::size_t s0 = std::upper_bound(br.begin(), br.end(), p.lo()) - br.begin();
    std::size_t s1 = std::lower_bound(br.begin(), br.end(), p.hi()) - br.begin();
    s0 = s0 > 0 ? s0 - 1 : 0;
    s1 = std::min(s1 + 1, nseg);
    for (std::size_t sg = s0; sg < s1; ++sg) {
      double c = 0.5 * (br[sg] + br[sg + 1]), r = 0.5 * (br[sg + 1] - br[sg]);
      for (int g = 0; g < 3; ++g) f[sg * 3 + g] += p.at(c + r * gx[g]);
    }
  }
  double acc = 0;
  for (std::size_t sg = 0; sg < nseg; ++sg) {
    double r = 0.5 * (br[sg + 1] - br[sg]);
    for (int g = 0; g < 3; ++g) acc += gw[g] * r * std::norm(f[sg * 3 + g]);
  }
  return acc;
}

/*
 * ||uv||^2 = sum_n int dxi int dtau |F|^2,
 * F(xi, n, tau) = sum_{k+m=n} int dnu K_{ij}(tau - phi(nu,k) - phi(xi-nu,m)),
 * nu in cell i of u, xi - nu in cell j of v.  The phase is linearized on
 * sub-pieces short enough that the curvature error stays below phase_tol times
 * the finest modulation cell.
 */
double product_norm_sq(const Side& A, const Side& B, const BilinearOptions& opt) {
  // kernels for every (row pair, cell pair)
  std::size_t nr1 = A.rows.size(), nr2 = B.rows.size();
  std::vector<Kernel> ker(nr1 * nr2 * A.nx * B.nx);
  auto kidx = [&](std::size_t r1, std::size_t r2, int i, int j) {
    return ((r1 * nr2 + r2) * A.nx + i) * B.nx + j;
  };
  for (std::size_t r1 = 0; r1 < nr1; ++r1)
    for (std::size_t r2 = 0; r2 < nr2; ++r2)
      for (int i = 0; i < A.nx; ++i)
        for (int j = 0; j < B.nx; ++j) ker[kidx(r1, r2, i, j)] = make_kernel(A, (int)r1, i, B, (int)r2, j);

  double hmin = std::min(A.hs, B.hs);
  std::vector<double> edges;
  for (int i = 0; i <= A.nx; ++i)
    for (int j = 0; j <= B.nx; ++j) edges.push_back(A.x0 + i * A.hx + B.x0 + j * B.hx);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(), [](double a, double b) { return b - a <= 1e-13 * (1 + std::abs(a)); }),
              edges.end());

  std::vector<double> gx, gw;
  {
    auto n = static_cast<std::size_t>(std::max(1, opt.xi_nodes));
    // Gauss-Legendre via Boost, symmetric nodes expanded
    std::vector<double> x, w;
    switch (n) {
      case 4: {
        using G = boost::math::quadrature::gauss<double, 4>;
        x.assign(G::abscissa().begin(), G::abscissa().end());
        w.assign(G::weights().begin(), G::weights().end());
        break;
      }
      case 16: {
        using G = boost::math::quadrature::gauss<double, 16>;
        x.assign(G::abscissa().begin(), G::abscissa().end());
        w.assign(G::weights().begin(), G::weights().end());
        break;
      }
      default: {
        using G = boost::math::quadrature::gauss<double, 8>;
        x.assign(G::abscissa().begin(), G::abscissa().end());
        w.assign(G::weights().begin(), G::weights().end());
      }
    }
    for (std::size_t q = 0; q < x.size(); ++q) {
      gx.push_back(x[q]);
      gw.push_back(w[q]);
      if (x[q] != 0) {
        gx.push_back(-x[q]);
        gw.push_back(w[q]);
      }
    }
  }

  std::map<long, std::vector<std::pair<std::size_t, std::size_t>>> by_n;
  for (std::size_t r1 = 0; r1 < nr1; ++r1)
    for (std::size_t r2 = 0; r2 < nr2; ++r2) by_n[A.rows[r1] + B.rows[r2]].push_back({r1, r2});

  double total = 0;
  std::vector<Piece> pieces;
  for (const auto& [n, pairs] : by_n)
    for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
      double c = 0.5 * (edges[e] + edges[e + 1]), r = 0.5 * (edges[e + 1] - edges[e]);
      for (std::size_t q = 0; q < gx.size(); ++q) {
        double xi = c + r * gx[q];
        pieces.clear();
        for (auto [r1, r2] : pairs) {
          double k = A.rows[r1], m = B.rows[r2];
          for (int i = 0; i < A.nx; ++i)
            for (int j = 0; j < B.nx; ++j) {
              double lo = std::max(A.x0 + i * A.hx, xi - (B.x0 + (j + 1) * B.hx));
              double hi = std::min(A.x0 + (i + 1) * A.hx, xi - (B.x0 + j * B.hx));
              if (!(hi > lo)) continue;
              const Kernel* K = &ker[kidx(r1, r2, i, j)];
              double curv = 6 * (std::max(std::abs(lo), std::abs(hi)) + std::max(std::abs(xi - lo), std::abs(xi - hi)));
              double lmax = std::sqrt(8 * opt.phase_tol * hmin / std::max(curv, 1e-300));
              int nsub = std::max(1, static_cast<int>(std::ceil((hi - lo) / lmax)));
              double l = (hi - lo) / nsub;
              for (int sIdx = 0; sIdx < nsub; ++sIdx) {
                double nm = lo + (sIdx + 0.5) * l;
                double slope = std::abs(phi_x(nm, k) - phi_x(xi - nm, m));
                pieces.push_back({K, phi(nm, k) + phi(xi - nm, m), 0.5 * slope * l, l, slope});
              }
            }
        }
        total += gw[q] * r * tau_norm_sq(pieces);
      }
    }
  return total;
}

void check_square(const Square& R, double N, double c, double M, bool refined) {
  if (refined && R.side > c * M * (1 + 1e-12)) throw PreconditionError("bilinear_constant: square side exceeds cM");
  if (std::ceil(R.y0) >= R.y0 + R.side) throw PreconditionError("bilinear_constant: square contains no integer row");
  if (!refined) return;
  for (double dx : {0.0, R.side})
    for (double dy : {0.0, R.side}) {
      double r = std::hypot(R.x0 + dx, R.y0 + dy);
      if (r < 0.9 * N || r > 80.0 / 9.0 * N) throw PreconditionError("bilinear_constant: square leaves the annulus");
    }
}

double max_theta_gap_between(const Square& A, const Square& B) {
  double best = 0;
  for (double ax : {A.x0, A.x0 + A.side})
    for (double bx : {B.x0, B.x0 + B.side})
      for (long ay = static_cast<long>(std::ceil(A.y0)); ay < A.y0 + A.side; ++ay)
        for (long by = static_cast<long>(std::ceil(B.y0)); by < B.y0 + B.side; ++by) {
          double t1 = std::sqrt(3 * ax * ax + double(ay) * ay), t2 = std::sqrt(3 * bx * bx + double(by) * by);
          best = std::max(best, std::abs(t1 - t2));
        }
  return best;
}

const char* name_of(BilinearVariant v) {
  switch (v) {
    case BilinearVariant::general: return "refined_general";
    case BilinearVariant::separated: return "refined_separated";
    case BilinearVariant::unit_general: return "unit_general";
    case BilinearVariant::unit_separated: return "unit_separated";
  }
  return "?";
}

}  // namespace

BoundReport bilinear_constant(const Square& R1, const Square& R2, double L1, double L2, BilinearVariant variant,
                              const BilinearOptions& opt, Rng& rng) {
  bool refined = variant == BilinearVariant::general || variant == BilinearVariant::separated;
  if (!is_power_of_two(L1) || !is_power_of_two(L2) || L1 < 1 || L2 < 1)
    throw PreconditionError("bilinear_constant: L1, L2 must be dyadic");
  if (refined && (opt.M < 1 || opt.M > opt.N / 128)) throw PreconditionError("bilinear_constant: need 1 <= M <= N/128");
  if (opt.cells_per_side < 1 || !is_power_of_two(opt.cells_per_side))
    throw PreconditionError("bilinear_constant: cells_per_side must be a power of two");
  check_square(R1, opt.N, opt.c, opt.M, refined);
  check_square(R2, opt.N, opt.c, opt.M, refined);
  if (variant == BilinearVariant::separated && max_theta_gap_between(R1, R2) < opt.M)
    throw PreconditionError("bilinear_constant: no witness with |theta1 - theta2| >= M");

  double N1 = dyadic(std::hypot(R1.x0 + R1.side / 2, R1.y0 + R1.side / 2));
  double N2 = dyadic(std::hypot(R2.x0 + R2.side / 2, R2.y0 + R2.side / 2));
  if (variant == BilinearVariant::unit_separated && N1 < 4 * N2)
    throw PreconditionError("bilinear_constant: unit separated variant needs N1 >= 4 N2");

  double rhs = 0;
  switch (variant) {
    case BilinearVariant::general: rhs = opt.M * std::sqrt(std::min(L1, L2)); break;
    case BilinearVariant::separated: rhs = std::sqrt(L1 * L2 / opt.N); break;
    case BilinearVariant::unit_general: rhs = std::min(N1, N2) * std::sqrt(std::min(L1, L2)); break;
    case BilinearVariant::unit_separated: rhs = std::sqrt(N2) / N1 * std::sqrt(L1 * L2); break;
  }

  Side A = make_side(R1, L1, opt.cells_per_side), B = make_side(R2, L2, opt.cells_per_side);

  BoundReport rep;
  rep.bound_name = name_of(variant);
  rep.N = opt.N;
  rep.M = opt.M;
  rep.L1 = L1;
  rep.L2 = L2;
  for (int d = 0; d < opt.draws; ++d) {
    double na = 0, nb = 0;
    for (auto& z : A.amp) na += std::norm(z = rng.complex_normal());
    for (auto& z : B.amp) nb += std::norm(z = rng.complex_normal());
    na *= A.hx * A.hs;
    nb *= B.hx * B.hs;
    double ratio = std::sqrt(product_norm_sq(A, B, opt) / (na * nb)) / rhs;
    if (ratio > rep.empirical_constant) {
      rep.empirical_constant = ratio;
      std::ostringstream os;
      os << "draw " << d << " R1=(" << R1.x0 << ',' << R1.y0 << ',' << R1.side << ") R2=(" << R2.x0 << ','
         << R2.y0 << ',' << R2.side << ')';
      rep.worst_case = os.str();
    }
    ++rep.samples;
  }
  return rep;
}

}  // namespace zk
