#include "zk/solver.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>

#include "zk/errors.hpp"
#include "zk/parallel.hpp"

namespace zk {

double max_stable_step(const FrequencyGrid& g) {
  double m = 0;
  for (int j = 0; j < g.n_x1; ++j) m = std::max(m, std::abs(dispersion(g.xi(j), g.k_max)));
  return m > 0 ? 0.5 / m : 1e300;
}

SpectralField duhamel_integrand(const SpectralField& u, double s) {
  SpectralField sq = multiply_fields(u, u);
  SpectralField d = derivative_x1(sq);
  d *= 0.5;
  return propagate_linear(d, -s);
}

std::vector<SpectralField> duhamel_trapezoid(const std::vector<double>& times,
                                             const std::vector<SpectralField>& integrands) {
  std::vector<SpectralField> out(times.size());
  if (times.empty()) return out;
  SpectralField acc(integrands[0].grid, integrands[0].real_valued);
  out[0] = acc;
  for (std::size_t m = 1; m < times.size(); ++m) {
    double dt = times[m] - times[m - 1];
    for (std::size_t i = 0; i < acc.coeffs.size(); ++i)
      acc.coeffs[i] += 0.5 * dt * (integrands[m - 1].coeffs[i] + integrands[m].coeffs[i]);
    out[m] = propagate_linear(acc, times[m]);
  }
  return out;
}

namespace {

std::vector<double> uniform_times(double T, double dt) {
  if (!(T >= 0) || !(dt > 0)) throw PreconditionError("time grid: need T >= 0 and dt > 0");
  long n = std::max(1L, static_cast<long>(std::ceil(T / dt - 1e-9)));
  std::vector<double> t(n + 1);
  for (long m = 0; m <= n; ++m) t[m] = T * static_cast<double>(m) / static_cast<double>(n);
  return t;
}

double h1_distance(const SpectralField& a, const SpectralField& b) {
  const auto& g = a.grid;
  double acc = 0;
  for (int j = 0; j < g.n_x1; ++j) {
    double xi = g.xi(j);
    for (int r = 0; r < g.rows(); ++r) {
      double n = g.n2(r);
      auto i = g.index(j, r);
      acc += std::norm(a.coeffs[i] - b.coeffs[i]) * (1 + xi * xi + n * n);
    }
  }
  return std::sqrt(acc * g.h() / g.x2_fold);
}

}  // namespace

Trajectory picard_solve(const SpectralField& u0, double T, double dt, int max_iter, double tol) {
  if (!u0.real_valued) throw PreconditionError("picard_solve: initial data must be real-flagged");
  if (dt > max_stable_step(u0.grid) * (1 + 1e-12)) throw PreconditionError("picard_solve: dt exceeds 0.5/max|phi|");
  Trajectory tr;
  tr.grid = u0.grid;
  tr.times = uniform_times(T, dt);
  tr.meta.method = "picard-trapezoid";
  tr.meta.tol = tol;
  std::size_t n = tr.times.size();
  std::vector<SpectralField> linear(n);
  parallel_for(n, [&](std::size_t m) { linear[m] = propagate_linear(u0, tr.times[m]); });
  tr.states = linear;
  std::vector<SpectralField> integ(n);
  for (int it = 0; it < max_iter; ++it) {
    parallel_for(n, [&](std::size_t m) { integ[m] = duhamel_integrand(tr.states[m], tr.times[m]); });
    auto duh = duhamel_trapezoid(tr.times, integ);
    double inc = 0;
    for (std::size_t m = 0; m < n; ++m) {
      SpectralField next = linear[m] + duh[m];
      next.real_valued = u0.real_valued;
      inc = std::max(inc, h1_distance(next, tr.states[m]));
      tr.states[m] = std::move(next);
    }
    tr.meta.iterations = it + 1;
    tr.meta.increments.push_back(inc);
    tr.meta.last_increment = inc;
    if (!std::isfinite(inc)) throw NumericalFailure("picard_solve: iterates are not finite");
    if (inc < tol) return tr;
  }
  if (max_iter > 0) throw NumericalFailure("picard_solve: no convergence within max_iter");
  return tr;
}

namespace {

SpectralField rhs(const SpectralField& u) {
  // u_t = -d_x Lap u + (1/2) d_x(u^2), i.e. i phi u_hat + (1/2) i xi (u^2)^
  const auto& g = u.grid;
  SpectralField nl = derivative_x1(multiply_fields(u, u));
  nl *= 0.5;
  for (int j = 0; j < g.n_x1; ++j) {
    double xi = g.xi(j);
    for (int r = 0; r < g.rows(); ++r) {
      auto i = g.index(j, r);
      nl.coeffs[i] += cplx(0, dispersion(xi, g.n2(r))) * u.coeffs[i];
    }
  }
  nl.real_valued = u.real_valued;
  return nl;
}

SpectralField axpy(const SpectralField& u, double a, const SpectralField& k) {
  SpectralField out = u;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += a * k.coeffs[i];
  return out;
}

}  // namespace

Trajectory rk4_solve(const SpectralField& u0, double T, double dt, int stride) {
  if (stride < 1) throw PreconditionError("rk4_solve: stride must be >= 1");
  auto t = uniform_times(T, dt);
  double h = t[1] - t[0];
  Trajectory tr;
  tr.grid = u0.grid;
  tr.meta.method = "rk4";
  SpectralField u = u0;
  tr.times.push_back(0);
  tr.states.push_back(u);
  for (std::size_t m = 1; m < t.size(); ++m) {
    auto k1 = rhs(u);
    auto k2 = rhs(axpy(u, 0.5 * h, k1));
    auto k3 = rhs(axpy(u, 0.5 * h, k2));
    auto k4 = rhs(axpy(u, h, k3));
    for (std::size_t i = 0; i < u.coeffs.size(); ++i)
      u.coeffs[i] += h / 6.0 * (k1.coeffs[i] + 2.0 * k2.coeffs[i] + 2.0 * k3.coeffs[i] + k4.coeffs[i]);
    if (!all_finite(u)) throw NumericalFailure("rk4_solve: state is not finite");
    if (m % stride == 0 || m + 1 == t.size()) {
      tr.times.push_back(t[m]);
      tr.states.push_back(u);
    }
  }
  return tr;
}

double mass(const SpectralField& u) {
  double acc = 0;
  for (const auto& c : u.coeffs) acc += std::norm(c);
  return acc * u.grid.h() / u.grid.x2_fold;
}

double energy(const SpectralField& u) {
  const auto& g = u.grid;
  SpectralField sq = multiply_fields(u, u);
  double grad = 0, cubic = 0;
  for (int j = 0; j < g.n_x1; ++j) {
    double xi = g.xi(j);
    for (int r = 0; r < g.rows(); ++r) {
      double n = g.n2(r);
      auto i = g.index(j, r);
      grad += std::norm(u.coeffs[i]) * (xi * xi + n * n);
      // int u^2 * conj(u); u is band limited so the truncated product is exact here
      cubic += (sq.coeffs[i] * std::conj(u.coeffs[i])).real();
    }
  }
  double w = g.h() / g.x2_fold;
  return 0.5 * grad * w + cubic * w / 6.0;
}

double h1_norm(const SpectralField& u) { return h1_distance(u, SpectralField(u.grid, u.real_valued)); }

ConservedReport conserved_report(const Trajectory& traj) {
  ConservedReport rep;
  if (traj.states.empty()) return rep;
  const auto& u0 = traj.states.front();
  double m0 = mass(u0), e0 = energy(u0);
  const auto& g = traj.grid;
  int jz = g.zero_column();
  for (const auto& u : traj.states) {
    if (m0 > 0) rep.mass_drift = std::max(rep.mass_drift, std::abs(mass(u) - m0) / m0);
    if (e0 != 0) rep.energy_drift = std::max(rep.energy_drift, std::abs(energy(u) - e0) / std::abs(e0));
    for (int n = -g.k_max; n <= g.k_max; ++n)
      rep.line_mass_drift = std::max(rep.line_mass_drift, std::abs(u.at(jz, n) - u0.at(jz, n)));
  }
  return rep;
}

SpectralField rescale(const SpectralField& u, int lam) {
  if (lam != 2 && lam != 4) throw PreconditionError("rescale: lambda must be 2 or 4");
  const auto& g = u.grid;
  FrequencyGrid ng(lam * g.xi_max, g.n_x1, lam * g.k_max, lam * g.x2_fold);
  SpectralField out(ng, u.real_valued);
  // xi_j scales to lam xi_j at the same column index; n2 -> lam n2
  for (int j = 0; j < g.n_x1; ++j)
    for (int n = -g.k_max; n <= g.k_max; ++n) out.at(j, lam * n) = static_cast<double>(lam) * u.at(j, n);
  return out;
}

void write_conserved_csv(std::ostream& os, const Trajectory& traj) {
  os << "time,mass,energy,line_mass_drift\n" << std::setprecision(17);
  if (traj.states.empty()) return;
  const auto& g = traj.grid;
  const auto& u0 = traj.states.front();
  int jz = g.zero_column();
  for (std::size_t m = 0; m < traj.states.size(); ++m) {
    const auto& u = traj.states[m];
    double d = 0;
    for (int n = -g.k_max; n <= g.k_max; ++n) d = std::max(d, std::abs(u.at(jz, n) - u0.at(jz, n)));
    os << traj.times[m] << ',' << mass(u) << ',' << energy(u) << ',' << d << '\n';
  }
}

}  // namespace zk

namespace zk {

SpectralField gaussian_data(const FrequencyGrid& g, double amplitude, double width) {
  PhysicalField f;
  f.grid = g;
  f.values.resize(g.size());
  double L = g.period_x1();
  for (int p = 0; p < g.n_x1; ++p)
    for (int q = 0; q < g.rows(); ++q) {
      double x1 = f.x1(p) - 0.5 * L, x2 = f.x2(q) - std::numbers::pi;
      f.values[static_cast<std::size_t>(p) * g.rows() + q] =
          amplitude * std::exp(-x1 * x1 / (2 * width * width) + (std::cos(x2) - 1) / (width * width));
    }
  return to_spectral(f, true);
}

}  // namespace zk
