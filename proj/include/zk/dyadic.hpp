#pragma once

namespace zk {

// d(x): power of two with d <= |x| < 2d, and 1 whenever |x| < 2.
double dyadic(double x);
// d'(x): largest power of two (any integer exponent) <= |x|; 0 for x = 0.
double dyadic_any(double x);
// smallest power of two >= x (x > 0)
double dyadic_ceil(double x);
// smallest power of two >= sqrt(nstar)/nmax
double m_floor(double nstar, double nmax);
bool is_power_of_two(double x);

}  // namespace zk
