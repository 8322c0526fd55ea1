#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "zk/spectrum.hpp"

namespace zk {

struct TrajectoryMeta {
  std::string method;
  int iterations = 0;
  double tol = 0;
  double last_increment = 0;
  std::vector<double> increments;  // sup_t H^1 increment per Picard sweep
};

struct Trajectory {
  FrequencyGrid grid;
  std::vector<double> times;
  std::vector<SpectralField> states;
  TrajectoryMeta meta;
};

// Largest step allowed for a grid: 0.5 / max |phi|.
double max_stable_step(const FrequencyGrid& g);

// S(-s) (1/2) d_x(u(s)^2), the interaction-picture integrand.
SpectralField duhamel_integrand(const SpectralField& u, double s);

// Cumulative trapezoid of the integrands at uniform nodes, pushed forward:
// returns S(t_m) * sum_{trapezoid} integrand.  Entry 0 is zero.
std::vector<SpectralField> duhamel_trapezoid(const std::vector<double>& times,
                                             const std::vector<SpectralField>& integrands);

// Picard iteration on the Duhamel formula.  max_iter = 0 returns the linear flow.
Trajectory picard_solve(const SpectralField& u0, double T, double dt, int max_iter, double tol);

// Classical RK4 on the method-of-lines system, stored every `stride` steps.
Trajectory rk4_solve(const SpectralField& u0, double T, double dt, int stride = 1);

double mass(const SpectralField& u);
// (1/2) int |grad u|^2 + (1/6) int u^3
double energy(const SpectralField& u);
double h1_norm(const SpectralField& u);

struct ConservedReport {
  double mass_drift = 0;       // max_t |M(t) - M(0)| / M(0)
  double energy_drift = 0;     // max_t |E(t) - E(0)| / |E(0)|
  double line_mass_drift = 0;  // max_{t, n2} |u_hat(0, n2, t) - u_hat(0, n2, 0)|
};
ConservedReport conserved_report(const Trajectory& traj);

// u_lam(x) = lam^2 u(lam x); lam in {2, 4}.
SpectralField rescale(const SpectralField& u, int lam);

// a exp(-(x1 - L/2)^2 / (2 w^2)) exp((cos(x2 - pi) - 1) / w^2), real
SpectralField gaussian_data(const FrequencyGrid& g, double amplitude, double width = 1.0);

// time, mass, energy, line_mass_drift
void write_conserved_csv(std::ostream& os, const Trajectory& traj);

}  // namespace zk
