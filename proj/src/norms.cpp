#include "zk/norms.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "zk/errors.hpp"

namespace zk {

void NormParams::validate() const {
  if (!(delta >= 0.0 && delta < 0.25)) throw PreconditionError("norm params: need 0 <= delta < 1/4");
  if (gamma != 0.0 && gamma != 0.5 && gamma != -0.5)
    throw PreconditionError("norm params: gamma must be 0, 1/2 or -1/2");
}

double y_weight(double xi, double h) { return bracket(xi) / std::max(std::abs(xi), 0.5 * h); }

namespace {

template <class W>
double spatial_norm(const SpectralField& f, W weight) {
  const auto& g = f.grid;
  double acc = 0;
  for (int j = 0; j < g.n_x1; ++j) {
    double xi = g.xi(j);
    for (int r = 0; r < g.rows(); ++r) {
      double a = std::norm(f.coeffs[g.index(j, r)]);
      if (a != 0.0) acc += a * weight(xi, g.n2(r));
    }
  }
  return std::sqrt(acc * g.h() / g.x2_fold);
}

double gamma_weight(double xi, double h, double gamma) {
  if (gamma == 0.0) return 1.0;
  return std::pow(y_weight(xi, h), 2.0 * gamma);
}

}  // namespace

double sobolev_norm(const SpectralField& f, double s) {
  return spatial_norm(f, [s](double xi, double n) { return std::pow(1.0 + xi * xi + n * n, s); });
}

double homogeneous_sobolev_norm(const SpectralField& f, double s) {
  return spatial_norm(f, [s](double xi, double n) {
    double r2 = xi * xi + n * n;
    return r2 == 0.0 ? 0.0 : std::pow(r2, s);
  });
}

double tilde_sobolev_norm(const SpectralField& f, double s) {
  double h = f.grid.h();
  return spatial_norm(f, [s, h](double xi, double n) {
    return std::pow(1.0 + xi * xi + n * n, s) * y_weight(xi, h);
  });
}

double xsb_norm(const SpaceTimeField& f, const NormParams& p) {
  p.validate();
  double acc = 0;
  for (int j = 0; j < f.n_xi; ++j) {
    double xi = f.xi(j);
    double wg = gamma_weight(xi, f.h, p.gamma);
    for (int r = 0; r < f.n2_count; ++r) {
      double n = f.n2(r);
      double ws = std::pow(1.0 + xi * xi + n * n, p.s) * wg;
      double col = 0;
      for (int l = 0; l < f.n_tau; ++l) {
        double a = std::norm(f.at(j, r, l));
        if (a == 0.0) continue;
        double sg = f.modulation(j, r, l);
        col += a * std::pow(1.0 + sg * sg, p.b);
      }
      acc += col * ws;
    }
  }
  return std::sqrt(acc * f.h * f.h_tau / f.x2_fold);
}

double ysb_norm(const SpaceTimeField& f, NormParams p) {
  p.gamma = 0.5;
  return xsb_norm(f, p);
}

ZNorm zsb_norm(const SpaceTimeField& f, NormParams p) {
  p.gamma = 0.5;
  double y = xsb_norm(f, p);
  double sup = 0;
  for (int j = 0; j < f.n_xi; ++j) {
    double w = y_weight(f.xi(j), f.h);
    for (int r = 0; r < f.n2_count; ++r) {
      double col = 0;
      for (int l = 0; l < f.n_tau; ++l) {
        double sg = f.modulation(j, r, l);
        col += std::norm(f.at(j, r, l)) * std::pow(1.0 + sg * sg, p.b);
      }
      sup = std::max(sup, w * w * col * f.h_tau);
    }
  }
  return {std::sqrt(y * y + sup), sup};
}

void write_norm_csv(std::ostream& os, const std::vector<NormRecord>& rows) {
  os << "norm_name,s,b,gamma,value\n" << std::setprecision(17);
  for (const auto& r : rows) os << r.name << ',' << r.s << ',' << r.b << ',' << r.gamma << ',' << r.value << '\n';
}

}  // namespace zk
