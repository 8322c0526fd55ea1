#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "zk/spacetime.hpp"

namespace zk {

enum class CounterCase { X, Y };

// Supports of the two profiles in nu and in omega = zeta + N/2.
struct PairSupports {
  double r1_lo, r1_hi, r2_lo, r2_hi;
};
PairSupports pair_supports(CounterCase c, double N);

// Finest first-variable step that still resolves R1.
double max_resolving_step(CounterCase c, double N);

/*
 * u_hat = 1{k2 = N} 1_{R1}(nu) 1{|mu - phi1| <= C},
 * v_hat = 1{m2 = -N/2} 1_{R2}(omega) 1{|eta - phi2| <= C}, zeta = -N/2 + omega.
 * Comoving-frame patches; h = 0 picks max_resolving_step.
 */
std::pair<SpaceTimeField, SpaceTimeField> build_pair(CounterCase c, int N, double C_mod, double h = 0,
                                                     int tau_cells = 16);

struct RatioRow {
  double N = 0;
  double ratio = 0;
  double lhs = 0, rhs = 0;     // ||d_x(uv)|| and ||u|| ||v||
  double box_fraction = 0;     // squared mass of d_x(uv) with |tilde tau| <= C
};

struct RatioScan {
  CounterCase which = CounterCase::X;
  double s = 0, b = 0, delta = 0, C_mod = 8;
  std::vector<RatioRow> rows;
  double slope = 0, intercept = 0, max_residual = 0;
};

struct QuadratureResolution {
  int rho_panels = 24;
  int nu_panels = 24;
  int sigma_panels = 48;
};

// One N: output norm in X^{s, b-1+delta} (resp. Y with the dual weight),
// inputs in X^{s,b} (resp. Y^{s,b}); amplitudes scale u and v.
RatioRow ratio_at(CounterCase c, double N, double s, double b, double delta, double C_mod,
                  const QuadratureResolution& q = {}, double amp_u = 1, double amp_v = 1);

// Least-squares slope of log2 ratio against log2 N.
RatioScan ratio_scan(CounterCase c, const std::vector<double>& N_list, double s, double b, double delta,
                     double C_mod = 8, const QuadratureResolution& q = {});

void write_ratio_csv(std::ostream& os, const RatioScan& scan);

}  // namespace zk
