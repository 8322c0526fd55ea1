#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace zk {

using cplx = std::complex<double>;

/*
 * Discretized frequency side of the cylinder.  xi_j = -Xi + j*h,
 * h = 2*Xi/n_x1, integer modes n2 in [-K, K].
 *
 * x2_fold = q marks data that is 2*pi/q periodic in x2 (only n2 in qZ are
 * meaningful).  Norms are then taken over one fundamental period, which is
 * what makes the lattice rescaling in the solver exact.
 */
struct FrequencyGrid {
  double xi_max = 1.0;
  int n_x1 = 2;
  int k_max = 1;
  int x2_fold = 1;

  FrequencyGrid() = default;
  FrequencyGrid(double xi_max, int n_x1, int k_max, int x2_fold = 1);

  double h() const { return 2.0 * xi_max / n_x1; }
  double period_x1() const;
  int rows() const { return 2 * k_max + 1; }
  std::size_t size() const { return static_cast<std::size_t>(n_x1) * rows(); }
  double xi(int j) const { return -xi_max + j * h(); }
  int n2(int r) const { return r - k_max; }
  int row(int n2) const { return n2 + k_max; }
  std::size_t index(int j, int r) const { return static_cast<std::size_t>(j) * rows() + r; }
  // column of xi = 0
  int zero_column() const { return n_x1 / 2; }
  // j with xi_j' = -xi_j (the Nyquist column maps to itself)
  int mirror_column(int j) const { return (n_x1 - j) % n_x1; }
  // nearest column to xi, or -1 when xi is not within 1e-9 h of a sample
  int column_of(double xi) const;

  bool operator==(const FrequencyGrid&) const = default;
};

struct SpectralField {
  FrequencyGrid grid;
  std::vector<cplx> coeffs;  // row-major (j, n2 + K)
  bool real_valued = false;

  SpectralField() = default;
  explicit SpectralField(const FrequencyGrid& g, bool real = false)
      : grid(g), coeffs(g.size()), real_valued(real) {}

  cplx& at(int j, int n2) { return coeffs[grid.index(j, grid.row(n2))]; }
  cplx at(int j, int n2) const { return coeffs[grid.index(j, grid.row(n2))]; }

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double a);
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double a, SpectralField f);

// Samples on the physical grid x1_p = p*L/n_x1, x2_q = 2*pi*q/(2K+1).
struct PhysicalField {
  FrequencyGrid grid;
  std::vector<cplx> values;  // row-major (p, q)

  double dx1() const { return grid.period_x1() / grid.n_x1; }
  double dx2() const;
  double x1(int p) const { return p * dx1(); }
  double x2(int q) const { return q * dx2(); }
};

double dispersion(double xi, double n);

SpectralField propagate_linear(const SpectralField& field, double t);
SpectralField derivative_x1(const SpectralField& field);
// Pointwise product with 3/2-rule zero padding: the exact discrete
// convolution (h/2pi) sum a(p) b(q-p) truncated to the retained band.
SpectralField multiply_fields(const SpectralField& a, const SpectralField& b);

// Unitary-type convention: u_hat = (1/2pi) int int u e^{-i(x.xi)} dx, so
// sum |u_hat|^2 h = sum |u|^2 dx1 dx2 exactly.
PhysicalField to_physical(const SpectralField& field);
SpectralField to_spectral(const PhysicalField& f, bool real_valued = false);
double l2_norm(const PhysicalField& f);

SpectralField constant_field(const FrequencyGrid& g, double value);
SpectralField single_mode(const FrequencyGrid& g, int j, int n2, cplx amplitude);
// reflect x -> -x: u_hat(xi, n) -> u_hat(-xi, -n)
SpectralField reflect(const SpectralField& f);

// max |u(-xi,-n) - conj u(xi,n)| over interior pairs (Nyquist column paired with itself)
double conjugate_symmetry_defect(const SpectralField& f);
// Projects onto conjugate-symmetric data and sets the real flag.
SpectralField make_real(const SpectralField& f);
bool all_finite(const SpectralField& f);
double max_abs(const SpectralField& f);

void require_same_grid(const FrequencyGrid& a, const FrequencyGrid& b, const char* what);

}  // namespace zk
