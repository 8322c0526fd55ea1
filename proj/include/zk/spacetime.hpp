#pragma once

#include <string>
#include <vector>

#include "zk/spectrum.hpp"

namespace zk {

// Modulations are tau - phi in the lab frame; a comoving field stores the
// modulation sigma directly on its tau axis (tau = phi(xi, n2) + sigma).
enum class Frame { lab, comoving };

struct WindowDescriptor {
  std::string kind = "none";  // "none", "hann", "indicator"
  double t0 = 0.0;
  double t1 = 0.0;
};

/*
 * u_hat(xi, n2, tau) on a patch: xi_j = xi0 + j*h (j < n_xi),
 * n2 = n2_min + r (r < n2_count), tau_l = (l - (n_tau-1)/2) * h_tau.
 * n_tau is odd so the tau axis is symmetric about 0.
 */
struct SpaceTimeField {
  double xi0 = 0.0;
  double h = 1.0;
  int n_xi = 0;
  int n2_min = 0;
  int n2_count = 0;
  double h_tau = 1.0;
  int n_tau = 1;
  Frame frame = Frame::lab;
  WindowDescriptor window;
  int x2_fold = 1;
  std::vector<cplx> coeffs;

  SpaceTimeField() = default;
  SpaceTimeField(double xi0, double h, int n_xi, int n2_min, int n2_count, double h_tau, int n_tau,
                 Frame frame);
  // patch covering the whole grid
  SpaceTimeField(const FrequencyGrid& g, double h_tau, int n_tau, Frame frame);

  double xi(int j) const { return xi0 + j * h; }
  int n2(int r) const { return n2_min + r; }
  double tau(int l) const { return (l - (n_tau - 1) / 2) * h_tau; }
  double modulation(int j, int r, int l) const;
  std::size_t index(int j, int r, int l) const {
    return (static_cast<std::size_t>(j) * n2_count + r) * n_tau + l;
  }
  cplx& at(int j, int r, int l) { return coeffs[index(j, r, l)]; }
  cplx at(int j, int r, int l) const { return coeffs[index(j, r, l)]; }
};

double hann(double t, double t0, double t1);

/*
 * Hann-windowed time transform of uniformly sampled states,
 * u_hat(tau) = (2 pi)^{-1/2} int w(t) u(t) e^{-i t tau} dt (discrete sum, zero padded
 * to at least n_tau_min samples).  Parseval holds exactly on the discrete level.
 */
SpaceTimeField windowed_transform(const std::vector<double>& times,
                                  const std::vector<SpectralField>& states, Frame frame,
                                  int n_tau_min = 0, bool apply_window = true);

}  // namespace zk
