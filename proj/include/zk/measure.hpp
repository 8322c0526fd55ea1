#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "zk/resonance.hpp"
#include "zk/rng.hpp"

namespace zk {

struct BoundReport {
  std::string bound_name;
  double empirical_constant = 0;
  long samples = 0;
  std::string worst_case;
  // profile columns for the CSV
  double N = 0, M = 0, L1 = 0, L2 = 0;
};

void write_bound_csv(std::ostream& os, const std::vector<BoundReport>& rows);

// --- level sets of Delta along zeta -------------------------------------------

// Fixed data of the zeta-integral: (xi, n2) third pair, m2 second component.
struct LevelSetFixed {
  double xi = 0;
  long n2 = 0;
  long m2 = 0;
};

struct QuadratureOptions {
  double rel_agreement = 0.01;  // successive refinements must agree this well
  int max_refinements = 8;
};

// Does zeta (with nu = -xi - zeta, k2 = -n2 - m2) carry this dyadic profile?
bool on_profile(const DyadicProfile& p, const LevelSetFixed& f, double zeta);

// Maximal zeta-intervals on which the profile holds.
std::vector<std::array<double, 2>> profile_intervals(const DyadicProfile& p, const LevelSetFixed& f);

// Delta as a function of zeta (a parabola).
double delta_along_zeta(const LevelSetFixed& f, double zeta);

// int <lambda - Delta>^{-1-delta} dzeta over the profile set.
// Requires M3 > M_{3,min} or N*_3 != 1.
double level_set_integral(double lambda, const DyadicProfile& p, const LevelSetFixed& f, double delta,
                          const QuadratureOptions& q = {});
// Same with the roles of (zeta, m2, N2, N*2, M2) and (xi, n2, N3, N*3, M3)
// exchanged: the fixed data is {zeta, m2} and {n2}, the variable is xi.
struct LevelSetFixedSwapped {
  double zeta = 0;
  long m2 = 0;
  long n2 = 0;
};
double level_set_integral_swapped(double lambda, const DyadicProfile& p, const LevelSetFixedSwapped& f,
                                  double delta, const QuadratureOptions& q = {});
// Restriction to zeta in [zeta0, zeta0 + 1]; no hypothesis on the profile.
double level_set_integral_unit(double lambda, const DyadicProfile& p, const LevelSetFixed& f, double delta,
                               double zeta0, const QuadratureOptions& q = {});

DyadicProfile swap_second_third(const DyadicProfile& p);

// Constant of the dyadic-shell argument: I <= C / (N M3) whenever M3 > M_{3,min}
// (two monotone pieces, |Delta'| >= M3 N).  Used as a ceiling for the sweep.
double level_set_ceiling_constant(double delta);

// --- A-sets -------------------------------------------------------------------

struct ASetBounds {
  double first = 0;    // L1 L2 min(N1,N2) / (N M3); only when M3 > M_{3,min}
  double second = 0;   // L1 L2 min(N1,N2) / N^2; only when N1 >= 4 N2 or N2 >= 4 N1
  double trivial = 0;  // min(L1,L2) min(N1,N2)^2
  double third = 0;    // min(L1,L2) (M3/N3) N^2; only when |xi| >= 1
  bool first_applies = false, second_applies = false, third_applies = false;
  // explicit constants from containment arguments (see measure.cpp)
  static constexpr double c_first = 512, c_second = 4096, c_trivial = 64, c_third = 512;
  double minimum() const;
};
ASetBounds a_set_bounds(const DyadicProfile& p, double xi);

struct ASetEstimate {
  double measure = 0;
  double std_error = 0;
  long samples = 0;
};
// Monte Carlo over (nu, k2); the mu-measure of each slice is exact.
// relaxed = true replaces the M3 shell by |theta1 - theta2| < 2 M3.
ASetEstimate a_set_measure(double xi, long n2, double tau, const DyadicProfile& p, Rng& rng,
                           long samples = 1'000'000, bool relaxed = false);

// --- bilinear estimates ---------------------------------------------------------

struct Square {
  double x0 = 0;  // lower-left corner in (xi, n2) coordinates
  double y0 = 0;
  double side = 1;
};

enum class BilinearVariant { general, separated, unit_general, unit_separated };

struct BilinearOptions {
  int draws = 100;
  int cells_per_side = 8;  // cells per square side and per modulation range [-2L, 2L]
  double M = 1;             // scale of the refined estimate
  double N = 64;            // annulus scale
  double c = 1.0 / 1024;
  int xi_nodes = 8;         // Gauss nodes per xi band
  double phase_tol = 1.0 / 16;  // linearization error of the phase, in units of the finest modulation cell
};

BoundReport bilinear_constant(const Square& R1, const Square& R2, double L1, double L2, BilinearVariant variant,
                              const BilinearOptions& opt, Rng& rng);

// --- sweeps ----------------------------------------------------------------------

struct LevelSetSweepOptions {
  int shapes = 5;
  std::vector<double> scales{128, 256, 512, 1024};
  int lambdas = 50;
  double delta = 0.1;
  std::uint64_t seed = 7;
};
struct LevelSetProfileResult {
  int shape = 0;
  double N = 0, M3 = 0;
  DyadicProfile profile;
  LevelSetFixed fixed;
  double constant = 0;  // max over lambda of I * N * M3
  double constant_low_half = 0, constant_high_half = 0;  // same over the lower/upper half of the lambdas
};
struct LevelSetSweep {
  std::vector<LevelSetProfileResult> profiles;
  double C_emp = 0;
  double worst_shape_spread = 0;  // max over shapes of max_N C / min_N C
  double ceiling = 0;
};
LevelSetSweep level_set_sweep(const LevelSetSweepOptions& o);

struct ASetSweepOptions {
  int configurations = 1000;
  long samples = 1'000'000;
  long relaxed_samples = 200'000;
  double max_norm = 256;
  std::uint64_t seed = 11;
};
struct ASetSweep {
  long configurations = 0;
  long violations = 0;          // strict set above the minimum of the applicable bounds
  long relaxed_violations = 0;  // relaxed set above the third bound
  std::vector<BoundReport> reports;  // worst ratio measure / bound per bound name
};
ASetSweep a_set_sweep(const ASetSweepOptions& o);

struct BilinearSweepOptions {
  int draws = 100;
  int cells = 8;
  std::uint64_t seed = 13;
};
std::vector<BoundReport> bilinear_sweep(const BilinearSweepOptions& o);

}  // namespace zk
