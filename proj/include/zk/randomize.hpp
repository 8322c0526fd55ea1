#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "zk/spacetime.hpp"
#include "zk/spectrum.hpp"

namespace zk {

struct RandomizationParams {
  double alpha = 0.97;
  std::uint64_t seed = 0;
  int K_trunc = 8;  // lattice points with max(|k1|, |k2|) <= K_trunc
  void validate() const;
};

// chi0(x) = h(1 - |x|), h(y) = g(y) / (g(y) + g(1 - y)), g(y) = exp(-1/y) for y > 0
double chi0(double x);

using LatticePoint = std::array<int, 2>;

SpectralField project_pk(const SpectralField& f, const LatticePoint& k);
// lattice points used by randomize_data on this grid
std::vector<LatticePoint> lattice_points(const FrequencyGrid& g, int K_trunc);

// Re(sum_k g_k P_k u0), g_k standard complex Gaussians keyed by (seed, k)
SpectralField randomize_data(const SpectralField& u0, const RandomizationParams& p);
// (1/2) sum_k ||P_k u0||_{H^s}^2, the mean of ||u^omega||_{H^s}^2 (Nyquist column excluded)
double expected_hs_norm_sq(const SpectralField& u0, double s, int K_trunc);

double generic_constant(const SpectralField& u0, double alpha);

// u_hat = <(xi, n2)>^{-alpha} on the grid (real, even)
SpectralField generic_profile(const FrequencyGrid& g, double alpha);

struct PicardRemainder {
  SpaceTimeField spacetime;  // Hann-windowed, comoving frame
  SpectralField endpoint;
};
// v1(t) = int_0^t S(t-s) (1/2) d_x((S(s) u)^2) ds, trapezoid on n_t nodes
PicardRemainder first_picard_remainder(const SpectralField& u0w, double T, int n_t);

// v1(T) with the s-integral done exactly for every product pair:
// (e^{iTD} - 1)/(iD), D = phi_p + phi_q - phi.  Output on the doubled grid.
SpectralField first_picard_endpoint_exact(const SpectralField& u0w, double T);

struct CensusRow {
  std::uint64_t seed = 0;
  int K_trunc = 0;
  double alpha = 0, s = 0, norm_u0 = 0, norm_v1 = 0;
};
struct CensusOptions {
  double alpha = 0.97;
  double s = 0.55;
  double T = 0.5;
  double h = 0.5;  // first-variable step of the data grid
  std::vector<int> K_list{8, 16, 32};
  int seeds = 50;
  std::uint64_t base_seed = 1;
};
std::vector<CensusRow> smoothing_census(const CensusOptions& o);
void write_smoothing_csv(std::ostream& os, const std::vector<CensusRow>& rows);

}  // namespace zk
