#pragma once

// Independent reference values for the tests. Nothing here calls the library.

#include <cmath>
#include <functional>

namespace oracle {

// J_nu(x) by its ascending series in long double. Accurate to ~1e-14 for
// x <= 20, which covers every argument the tests use.
inline long double bessel_j(long double nu, long double x) {
  const long double half = x / 2.0L;
  long double term = std::pow(half, nu) / std::tgamma(nu + 1.0L);
  long double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= -half * half / (k * (k + nu));
    sum += term;
    if (std::fabs(term) < 1e-22L * std::fabs(sum)) break;
  }
  return sum;
}

// Plain bisection on a bracket known to hold exactly one root.
inline double bisect(const std::function<long double(long double)>& f, long double a, long double b) {
  long double fa = f(a);
  for (int i = 0; i < 200 && b - a > 1e-16L * b; ++i) {
    const long double m = 0.5L * (a + b);
    const long double fm = f(m);
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return static_cast<double>(0.5L * (a + b));
}

// First positive zero of J_nu, from a scan with step 0.05 starting past 0.
inline double first_root(double nu) {
  auto f = [nu](long double x) { return bessel_j(nu, x); };
  long double a = 0.05L;
  while (f(a) * f(a + 0.05L) > 0) a += 0.05L;
  return bisect(f, a, a + 0.05L);
}

// Composite Simpson on [a, b] with an even number of intervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, int intervals) {
  const double h = (b - a) / intervals;
  double s = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

}  // namespace oracle
