#include "resonance/special_functions.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "resonance/errors.hpp"

namespace resonance {
namespace {

constexpr double kSeriesRadius = 0.05;
constexpr int kSeriesTerms = 16;
constexpr double kInf = std::numeric_limits<double>::infinity();

double j_value(double order, double x) {
  if (x == 0.0) {
    if (order == 0.0) return 1.0;
    return order < 0.0 ? kInf : 0.0;
  }
  return boost::math::cyl_bessel_j(order, x);
}

}  // namespace

BesselValue bessel_j(double order, double x) {
  if (!(order >= -0.5)) throw DomainError("bessel_j: order must be >= -1/2");
  if (!(x >= 0.0)) throw DomainError("bessel_j: argument must be >= 0");
  if (x == 0.0) {
    double d = 0.0;
    if (order == 1.0) d = 0.5;
    else if (order == -0.5) d = -kInf;
    else if (order > 0.0 && order < 1.0) d = kInf;
    return {j_value(order, 0.0), d};
  }
  const double j = boost::math::cyl_bessel_j(order, x);
  const double jp1 = boost::math::cyl_bessel_j(order + 1.0, x);
  return {j, order / x * j - jp1};
}

double first_bessel_root(double order) {
  if (!(order >= -0.5)) throw DomainError("first_bessel_root: order must be >= -1/2");
  constexpr double step = 0.05;
  double lo = step;
  double f_lo = j_value(order, lo);
  double hi = lo;
  bool bracketed = false;
  while (hi < 30.0) {
    hi = lo + step;
    const double f_hi = j_value(order, hi);
    if ((f_lo > 0.0) != (f_hi > 0.0) || f_hi == 0.0) {
      bracketed = true;
      break;
    }
    lo = hi;
    f_lo = f_hi;
  }
  if (!bracketed) throw SearchError("first_bessel_root: no sign change in [0, 30]");

  while (hi - lo > 1e-3) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = j_value(order, mid);
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 50; ++it) {
    const BesselValue b = bessel_j(order, x);
    const double dx = b.value / b.derivative;
    double next = x - dx;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if ((j_value(order, next) > 0.0) == (f_lo > 0.0)) lo = next;
    else hi = next;
    if (std::abs(next - x) <= 4.0 * std::numeric_limits<double>::epsilon() * x) {
      x = next;
      break;
    }
    x = next;
  }
  return x;
}

EigenPair eigenpair(int n) {
  if (n < 1 || n > 10) throw DomainError("eigenpair: dimension must lie in 1..10, got " + std::to_string(n));
  EigenPair ep;
  ep.n = n;
  const double nu = ep.order();
  ep.nu1 = first_bessel_root(nu);
  ep.lambda1 = ep.nu1 * ep.nu1;
  if (n == 1) {
    ep.lambda2 = 9.0 * std::numbers::pi * std::numbers::pi / 4.0;
  } else {
    const double j = first_bessel_root(0.5 * n);
    ep.lambda2 = j * j;
  }
  ep.c0 = boost::math::tgamma(nu + 1.0) * std::pow(2.0 / ep.nu1, nu);
  ep.phi1_pp0 = -ep.lambda1 / n;
  ep.series.assign(kSeriesTerms, 0.0);
  ep.series[0] = 1.0;
  for (int k = 1; k < kSeriesTerms; ++k) {
    ep.series[k] = -ep.lambda1 * ep.series[k - 1] / (2.0 * k * (2.0 * k + n - 2.0));
  }
  return ep;
}

double EigenPair::phi1(double r) const {
  if (r < kSeriesRadius) {
    const double r2 = r * r;
    double s = 0.0;
    for (int k = static_cast<int>(series.size()) - 1; k >= 0; --k) s = s * r2 + series[k];
    return s;
  }
  const double nu = order();
  return c0 * std::pow(r, -nu) * boost::math::cyl_bessel_j(nu, nu1 * r);
}

std::array<double, 5> EigenPair::derivs_from_series(double r) const {
  std::array<double, 5> d{};
  for (std::size_t k = 0; k < series.size(); ++k) {
    const int p = 2 * static_cast<int>(k);
    double falling = 1.0;
    for (int j = 0; j <= 4 && j <= p; ++j) {
      d[j] += series[k] * falling * std::pow(r, p - j);
      falling *= (p - j);
    }
  }
  return d;
}

std::array<double, 5> EigenPair::derivs_from_bessel(double r) const {
  const double nu = order();
  const double scale = c0 * std::pow(r, -nu);
  const double z = nu1 * r;
  std::array<double, 5> d{};
  d[0] = scale * boost::math::cyl_bessel_j(nu, z);
  d[1] = -scale * nu1 * boost::math::cyl_bessel_j(nu + 1.0, z);
  const double m = n - 1.0;
  d[2] = -m * d[1] / r - lambda1 * d[0];
  d[3] = -m * (d[2] / r - d[1] / (r * r)) - lambda1 * d[1];
  d[4] = -m * (d[3] / r - 2.0 * d[2] / (r * r) + 2.0 * d[1] / (r * r * r)) - lambda1 * d[2];
  return d;
}

std::vector<double> EigenPair::derivs(double r, int max_order) const {
  if (max_order < 0 || max_order > 4) throw DomainError("phi1_derivs: max_order must lie in 0..4");
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("phi1_derivs: r must lie in [0, 1]");
  const auto all = r < kSeriesRadius ? derivs_from_series(r) : derivs_from_bessel(r);
  return {all.begin(), all.begin() + max_order + 1};
}

double EigenPair::inverse_phi1(double y) const {
  if (y >= 1.0) return 0.0;
  if (y <= 0.0) return 1.0;
  double lo = 0.0, hi = 1.0;
  double r = std::sqrt(2.0 * (1.0 - y) / -phi1_pp0);
  if (!(r < 1.0)) r = 0.5;
  for (int it = 0; it < 100; ++it) {
    const auto d = derivs(r, 1);
    const double f = d[0] - y;
    if (f > 0.0) lo = r;
    else hi = r;
    double next = d[1] != 0.0 ? r - f / d[1] : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - r) <= 2.0 * std::numeric_limits<double>::epsilon() * std::max(r, 1e-300) || hi - lo < 1e-16) {
      return next;
    }
    r = next;
  }
  return r;
}

double EigenPair::inverse_phi1_complement(double t) const {
  if (t >= 1e-2) return inverse_phi1(1.0 - t);
  if (t <= 0.0) return 0.0;
  // 1 - phi1 summed from the even series without forming phi1 itself.
  auto deficit = [&](double r) {
    double v = 0.0, dv = 0.0;
    for (std::size_t k = series.size() - 1; k >= 1; --k) {
      const double p = std::pow(r, 2.0 * k - 1.0);
      v -= series[k] * p * r;
      dv -= 2.0 * k * series[k] * p;
    }
    return std::pair{v, dv};
  };
  double r = std::sqrt(2.0 * t / -phi1_pp0);
  for (int it = 0; it < 50; ++it) {
    const auto [v, dv] = deficit(r);
    const double next = r - (v - t) / dv;
    if (std::abs(next - r) <= 4.0 * std::numeric_limits<double>::epsilon() * r) return next;
    r = next;
  }
  return r;
}

}  // namespace resonance
