#pragma once

#include <cmath>
#include <iosfwd>
#include <string>
#include <vector>

#include "zk/spacetime.hpp"
#include "zk/spectrum.hpp"

namespace zk {

// gamma selects the low-frequency weight (<xi>/|xi|)^{2 gamma}:
// 0 for X, 1/2 for Y, -1/2 for the dual-type weight |xi|/<xi>.
struct NormParams {
  double s = 0.0;
  double b = 0.0;
  double delta = 0.0;
  double gamma = 0.0;

  void validate() const;
};

inline double bracket(double x) { return std::sqrt(1.0 + x * x); }
inline double bracket(double x, double y) { return std::sqrt(1.0 + x * x + y * y); }

// <xi>/|xi| with |xi| floored at h/2
double y_weight(double xi, double h);

double sobolev_norm(const SpectralField& f, double s);
// |(xi,n2)|^s weight, the (0,0) cell dropped
double homogeneous_sobolev_norm(const SpectralField& f, double s);
double tilde_sobolev_norm(const SpectralField& f, double s);

double xsb_norm(const SpaceTimeField& f, const NormParams& p);
double ysb_norm(const SpaceTimeField& f, NormParams p);

struct ZNorm {
  double total = 0.0;
  double sup_term = 0.0;  // the frequency-supremum part, squared-norm units
};
ZNorm zsb_norm(const SpaceTimeField& f, NormParams p);

struct NormRecord {
  std::string name;
  double s = 0, b = 0, gamma = 0, value = 0;
};
void write_norm_csv(std::ostream& os, const std::vector<NormRecord>& rows);

}  // namespace zk
