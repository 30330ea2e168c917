#pragma once

namespace charpoly::specfun {

double log_gamma(double x);

// Sum of log(j!) for j = a..b (empty sum when b < a).
double log_factorial_product(int a, int b);

// Modified Bessel functions of the first (I) and second (K) kind, orders 0 and 1.
double bessel_i(int order, double x);
double log_bessel_i(int order, double x);
double bessel_k(int order, double x);
double log_bessel_k(int order, double x);

}  // namespace charpoly::specfun
