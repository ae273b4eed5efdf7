#include <algorithm>
#include <cmath>
#include <numbers>

#include "resonance/errors.hpp"
#include "resonance/oscillatory.hpp"
#include "resonance/quadrature.hpp"

namespace resonance {
namespace {

constexpr double kPi = std::numbers::pi;

void require_converged(const QuadratureResult& q, const char* what) {
  if (!q.converged) throw AccuracyError(std::string(what) + ": quadrature did not reach tolerance", q.error);
}

}  // namespace

double half_wave_integral(const GeneralNonlinearity& g, double xi) {
  if (!(xi >= 0.0)) throw DomainError("I_1d: xi must be >= 0");
  if (xi == 0.0) return 2.0 * g(0.0);
  // Breakpoints where xi sin x crosses multiples of half an oscillation.
  const double du = 0.5 * g.oscillation_scale;
  const int m = static_cast<int>(std::floor(xi / du));
  std::vector<double> left{0.0};
  for (int j = 1; j <= m; ++j) {
    const double x = std::asin(std::min(1.0, j * du / xi));
    if (x > left.back() && x < 0.5 * kPi) left.push_back(x);
  }
  left.push_back(0.5 * kPi);
  std::vector<double> breaks = left;
  for (auto it = left.rbegin() + 1; it != left.rend(); ++it) breaks.push_back(kPi - *it);
  auto integrand = [&](double x) {
    const double s = std::sin(x);
    return g(xi * s) * s;
  };
  const QuadratureResult q = integrate_panels(integrand, breaks, quadrature_tolerance(xi));
  require_converged(q, "I_1d");
  return q.value;
}

double half_wave_integral_y_form(const GeneralNonlinearity& g, double xi) {
  if (!(xi >= 0.0)) throw DomainError("I_1d: xi must be >= 0");
  const double dy = xi > 0.0 ? std::min(0.25, 0.5 * g.oscillation_scale / xi) : 0.25;
  const int m = std::max(2, static_cast<int>(std::ceil(1.0 / dy)));
  const double h = 1.0 / m;
  const double tol = quadrature_tolerance(xi) / m;
  QuadratureResult total;
  for (int j = 0; j + 1 < m; ++j) {
    total += integrate(
        [&](double y) { return 2.0 * g(xi * y) * y / std::sqrt((1.0 - y) * (1.0 + y)); }, j * h, (j + 1) * h, tol);
  }
  // y = 1 - h s^2 on the last panel removes the 1/sqrt(1 - y) singularity.
  total += integrate(
      [&](double s) {
        const double y = 1.0 - h * s * s;
        return 4.0 * std::sqrt(h) * g(xi * y) * y / std::sqrt(2.0 - h * s * s);
      },
      0.0, 1.0, tol);
  require_converged(total, "I_1d (y form)");
  return total.value;
}

MomentFunction::MomentFunction(GeneralNonlinearity g, double cached_to)
    : g_(std::move(g)), step_(0.5 * g_.oscillation_scale) {
  const int m = std::max(0, static_cast<int>(std::ceil(cached_to / step_)));
  cumulative_.assign(m + 1, 0.0);
  for (int j = 0; j < m; ++j) {
    const QuadratureResult q =
        integrate([this](double t) { return g_(t) * t; }, j * step_, (j + 1) * step_, 1e-13);
    cumulative_[j + 1] = cumulative_[j] + q.value;
  }
}

double MomentFunction::operator()(double u) const {
  if (!(u >= 0.0)) throw DomainError("H_integral: u must be >= 0");
  const int last = static_cast<int>(cumulative_.size()) - 1;
  const int j = std::min(last, static_cast<int>(std::floor(u / step_)));
  double value = cumulative_[j];
  double a = j * step_;
  auto integrand = [this](double t) { return g_(t) * t; };
  while (a < u) {
    const double b = std::min(u, a + step_);
    value += integrate(integrand, a, b, 1e-13).value;
    a = b;
  }
  return value;
}

double moment_integral(const GeneralNonlinearity& g, double u) { return MomentFunction(g, u)(u); }

MomentTestRecord moment_sign_test(const GeneralNonlinearity& g, double u_max, double eps) {
  if (!(u_max > 0.0) || !(eps > 0.0)) throw DomainError("h_test: u_max and eps must be positive");
  const MomentFunction moment(g, u_max);
  MomentTestRecord rec;
  // Interior extrema of H are the sign changes of g (H' = t g).
  const double step = g.oscillation_scale / 64.0;
  double a = step;
  double ga = g(a);
  while (a < u_max) {
    const double b = std::min(u_max, a + step);
    const double gb = g(b);
    if ((ga > 0.0 && gb <= 0.0) || (ga < 0.0 && gb >= 0.0)) {
      double lo = a, hi = b;
      for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((g(mid) > 0.0) == (ga > 0.0)) lo = mid;
        else hi = mid;
      }
      const double t = 0.5 * (lo + hi);
      const double h = moment(t);
      if (ga > 0.0 && h > eps) {
        rec.xi_seq.push_back(t);
        rec.h_at_xi.push_back(h);
      } else if (ga < 0.0 && h < -eps) {
        rec.eta_seq.push_back(t);
        rec.h_at_eta.push_back(h);
      }
    }
    a = b;
    ga = gb;
  }
  rec.satisfied = rec.xi_seq.size() >= 5 && rec.eta_seq.size() >= 5;
  return rec;
}

}  // namespace resonance
