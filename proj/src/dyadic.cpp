#include "zk/dyadic.hpp"

#include <cmath>

namespace zk {

double dyadic_any(double x) {
  x = std::abs(x);
  if (x == 0.0 || !std::isfinite(x)) return 0.0;
  int e;
  std::frexp(x, &e);  // x = m 2^e, m in [1/2, 1)
  return std::ldexp(1.0, e - 1);
}

double dyadic(double x) { return std::abs(x) < 2.0 ? 1.0 : dyadic_any(x); }

double dyadic_ceil(double x) {
  int e;
  double m = std::frexp(x, &e);
  return m == 0.5 ? x : std::ldexp(1.0, e);
}

double m_floor(double nstar, double nmax) { return dyadic_ceil(std::sqrt(nstar) / nmax); }

bool is_power_of_two(double x) {
  if (!(x > 0) || !std::isfinite(x)) return false;
  int e;
  return std::frexp(x, &e) == 0.5;
}

}  // namespace zk
