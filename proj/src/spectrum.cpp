#include "zk/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "zk/errors.hpp"
#include "zk/fft.hpp"

namespace zk {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

int wrap(int q, int n) { return ((q % n) + n) % n; }
}  // namespace

FrequencyGrid::FrequencyGrid(double xi_max_, int n_x1_, int k_max_, int x2_fold_)
    : xi_max(xi_max_), n_x1(n_x1_), k_max(k_max_), x2_fold(x2_fold_) {
  if (!(xi_max >= 1.0) || !std::isfinite(xi_max))
    throw PreconditionError("grid: xi_max must be >= 1");
  if (n_x1 < 2 || n_x1 % 2 != 0) throw PreconditionError("grid: n_x1 must be a positive even integer");
  if (k_max < 1) throw PreconditionError("grid: k_max must be >= 1");
  if (x2_fold < 1) throw PreconditionError("grid: x2_fold must be >= 1");
}

double FrequencyGrid::period_x1() const { return two_pi * n_x1 / (2.0 * xi_max); }

int FrequencyGrid::column_of(double x) const {
  double jf = (x + xi_max) / h();
  long j = std::lround(jf);
  if (j < 0 || j >= n_x1 || std::abs(jf - j) > 1e-9) return -1;
  return static_cast<int>(j);
}

double PhysicalField::dx2() const { return two_pi / grid.rows(); }

void require_same_grid(const FrequencyGrid& a, const FrequencyGrid& b, const char* what) {
  if (!(a == b)) throw GridMismatch(std::string(what) + ": grid mismatch");
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  require_same_grid(grid, o.grid, "add");
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
  real_valued = real_valued && o.real_valued;
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  require_same_grid(grid, o.grid, "subtract");
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
  real_valued = real_valued && o.real_valued;
  return *this;
}

SpectralField& SpectralField::operator*=(double a) {
  for (auto& c : coeffs) c *= a;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double a, SpectralField f) { return f *= a; }

double dispersion(double xi, double n) { return xi * (xi * xi + n * n); }

SpectralField propagate_linear(const SpectralField& field, double t) {
  SpectralField out = field;
  const auto& g = field.grid;
  for (int j = 0; j < g.n_x1; ++j) {
    double xi = g.xi(j);
    for (int r = 0; r < g.rows(); ++r) {
      double ph = t * dispersion(xi, g.n2(r));
      out.coeffs[g.index(j, r)] *= cplx(std::cos(ph), std::sin(ph));
    }
  }
  return out;
}

SpectralField derivative_x1(const SpectralField& field) {
  SpectralField out = field;
  const auto& g = field.grid;
  for (int j = 0; j < g.n_x1; ++j) {
    cplx m(0.0, g.xi(j));
    for (int r = 0; r < g.rows(); ++r) out.coeffs[g.index(j, r)] *= m;
  }
  return out;
}

namespace {

// Scatter spectral coefficients into an (m0 x m1) FFT array in wrapped order.
void scatter(const SpectralField& f, std::vector<cplx>& buf, int m0, int m1) {
  const auto& g = f.grid;
  buf.assign(static_cast<std::size_t>(m0) * m1, cplx{});
  int half = g.n_x1 / 2;
  for (int j = 0; j < g.n_x1; ++j) {
    int p = wrap(j - half, m0);
    for (int r = 0; r < g.rows(); ++r) {
      int q = wrap(g.n2(r), m1);
      buf[static_cast<std::size_t>(p) * m1 + q] = f.coeffs[g.index(j, r)];
    }
  }
}

void gather(const std::vector<cplx>& buf, int m0, int m1, double scale, SpectralField& f) {
  const auto& g = f.grid;
  int half = g.n_x1 / 2;
  for (int j = 0; j < g.n_x1; ++j) {
    int p = wrap(j - half, m0);
    for (int r = 0; r < g.rows(); ++r) {
      int q = wrap(g.n2(r), m1);
      f.coeffs[g.index(j, r)] = scale * buf[static_cast<std::size_t>(p) * m1 + q];
    }
  }
}

// The Nyquist column has no partner inside the band; real data keep it empty.
void clear_nyquist(SpectralField& f) {
  for (int r = 0; r < f.grid.rows(); ++r) f.coeffs[f.grid.index(0, r)] = 0.0;
}

}  // namespace

SpectralField multiply_fields(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid, b.grid, "multiply_fields");
  const auto& g = a.grid;
  // 3/2 rule in both directions: aliases of the full product land outside the band
  int m0 = 3 * g.n_x1 / 2;
  int m1 = fft_size_at_least(3 * g.k_max + 1);
  std::vector<cplx> fa, fb;
  scatter(a, fa, m0, m1);
  scatter(b, fb, m0, m1);
  fft_2d(fa.data(), m0, m1, +1);
  fft_2d(fb.data(), m0, m1, +1);
  for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= fb[i];
  fft_2d(fa.data(), m0, m1, -1);
  // physical values carry h/2pi each; the forward map carries L/(m0 m1)
  double hs = g.h() / two_pi;
  double scale = hs * hs * g.period_x1() / (static_cast<double>(m0) * m1);
  SpectralField out(g, a.real_valued && b.real_valued);
  gather(fa, m0, m1, scale, out);
  if (out.real_valued) clear_nyquist(out);
  return out;
}

PhysicalField to_physical(const SpectralField& field) {
  const auto& g = field.grid;
  PhysicalField out{g, {}};
  scatter(field, out.values, g.n_x1, g.rows());
  fft_2d(out.values.data(), g.n_x1, g.rows(), +1);
  double scale = g.h() / two_pi;
  for (auto& v : out.values) v *= scale;
  return out;
}

SpectralField to_spectral(const PhysicalField& f, bool real_valued) {
  const auto& g = f.grid;
  std::vector<cplx> buf = f.values;
  fft_2d(buf.data(), g.n_x1, g.rows(), -1);
  SpectralField out(g, real_valued);
  gather(buf, g.n_x1, g.rows(), g.period_x1() / (static_cast<double>(g.n_x1) * g.rows()), out);
  if (real_valued) out = make_real(out);
  return out;
}

double l2_norm(const PhysicalField& f) {
  double s = 0;
  for (auto v : f.values) s += std::norm(v);
  return std::sqrt(s * f.dx1() * f.dx2() / f.grid.x2_fold);
}

SpectralField constant_field(const FrequencyGrid& g, double value) {
  // u = value everywhere  <=>  u_hat(0,0) = value * L
  SpectralField f(g, true);
  f.at(g.zero_column(), 0) = value * g.period_x1();
  return f;
}

SpectralField single_mode(const FrequencyGrid& g, int j, int n2, cplx amplitude) {
  if (j < 0 || j >= g.n_x1 || std::abs(n2) > g.k_max) throw PreconditionError("single_mode: outside grid");
  SpectralField f(g, false);
  f.at(j, n2) = amplitude;
  return f;
}

SpectralField reflect(const SpectralField& f) {
  const auto& g = f.grid;
  SpectralField out(g, f.real_valued);
  for (int j = 0; j < g.n_x1; ++j)
    for (int n = -g.k_max; n <= g.k_max; ++n) out.at(g.mirror_column(j), -n) = f.at(j, n);
  return out;
}

double conjugate_symmetry_defect(const SpectralField& f) {
  const auto& g = f.grid;
  double d = 0;
  for (int j = 0; j < g.n_x1; ++j)
    for (int n = -g.k_max; n <= g.k_max; ++n)
      d = std::max(d, std::abs(f.at(g.mirror_column(j), -n) - std::conj(f.at(j, n))));
  return d;
}

SpectralField make_real(const SpectralField& f) {
  const auto& g = f.grid;
  SpectralField out(g, true);
  for (int j = 1; j < g.n_x1; ++j)
    for (int n = -g.k_max; n <= g.k_max; ++n)
      out.at(j, n) = 0.5 * (f.at(j, n) + std::conj(f.at(g.mirror_column(j), -n)));
  return out;
}

bool all_finite(const SpectralField& f) {
  return std::all_of(f.coeffs.begin(), f.coeffs.end(),
                     [](cplx c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

double max_abs(const SpectralField& f) {
  double m = 0;
  for (auto c : f.coeffs) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace zk
