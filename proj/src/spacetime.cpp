#include "zk/spacetime.hpp"

#include <cmath>
#include <numbers>

#include "zk/errors.hpp"
#include "zk/fft.hpp"

namespace zk {

SpaceTimeField::SpaceTimeField(double xi0_, double h_, int n_xi_, int n2_min_, int n2_count_,
                               double h_tau_, int n_tau_, Frame frame_)
    : xi0(xi0_), h(h_), n_xi(n_xi_), n2_min(n2_min_), n2_count(n2_count_), h_tau(h_tau_),
      n_tau(n_tau_), frame(frame_) {
  if (n_tau % 2 == 0) throw PreconditionError("space-time field: n_tau must be odd");
  if (n_xi < 1 || n2_count < 1 || !(h > 0) || !(h_tau > 0))
    throw PreconditionError("space-time field: empty axis");
  coeffs.assign(static_cast<std::size_t>(n_xi) * n2_count * n_tau, cplx{});
}

SpaceTimeField::SpaceTimeField(const FrequencyGrid& g, double h_tau_, int n_tau_, Frame frame_)
    : SpaceTimeField(-g.xi_max, g.h(), g.n_x1, -g.k_max, g.rows(), h_tau_, n_tau_, frame_) {
  x2_fold = g.x2_fold;
}

double SpaceTimeField::modulation(int j, int r, int l) const {
  if (frame == Frame::comoving) return tau(l);
  return tau(l) - dispersion(xi(j), n2(r));
}

double hann(double t, double t0, double t1) {
  if (t <= t0 || t >= t1) return 0.0;
  double s = std::sin(std::numbers::pi * (t - t0) / (t1 - t0));
  return s * s;
}

SpaceTimeField windowed_transform(const std::vector<double>& times,
                                  const std::vector<SpectralField>& states, Frame frame,
                                  int n_tau_min, bool apply_window) {
  if (times.size() != states.size() || times.size() < 2)
    throw PreconditionError("windowed_transform: need matching times/states, at least 2");
  const FrequencyGrid& g = states.front().grid;
  int m = static_cast<int>(times.size());
  double dt = (times.back() - times.front()) / (m - 1);
  int n_tau = std::max(m, n_tau_min);
  if (n_tau % 2 == 0) ++n_tau;
  double h_tau = 2.0 * std::numbers::pi / (n_tau * dt);
  SpaceTimeField out(g, h_tau, n_tau, frame);
  double t0 = times.front(), t1 = times.back();
  out.window = apply_window ? WindowDescriptor{"hann", t0, t1} : WindowDescriptor{"indicator", t0, t1};

  std::vector<SpectralField> w(m);
  for (int i = 0; i < m; ++i) {
    require_same_grid(states[i].grid, g, "windowed_transform");
    w[i] = frame == Frame::comoving ? propagate_linear(states[i], -times[i]) : states[i];
    w[i] *= apply_window ? hann(times[i], t0, t1) : 1.0;
  }
  int c = (n_tau - 1) / 2;
  double scale = dt / std::sqrt(2.0 * std::numbers::pi);
  std::vector<cplx> buf(n_tau);
  for (int j = 0; j < g.n_x1; ++j)
    for (int r = 0; r < g.rows(); ++r) {
      std::fill(buf.begin(), buf.end(), cplx{});
      for (int i = 0; i < m; ++i) buf[i] = w[i].coeffs[g.index(j, r)];
      fft_1d(buf.data(), n_tau, -1);
      for (int l = 0; l < n_tau; ++l) {
        int q = ((l - c) % n_tau + n_tau) % n_tau;
        double ph = -out.tau(l) * t0;
        out.at(j, r, l) = scale * buf[q] * cplx(std::cos(ph), std::sin(ph));
      }
    }
  return out;
}

}  // namespace zk
