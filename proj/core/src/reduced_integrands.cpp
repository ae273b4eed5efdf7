#include <cmath>

#include "resonance/errors.hpp"
#include "resonance/oscillatory.hpp"

namespace resonance {
namespace detail {

constexpr double kOriginSeriesRadius = 0.05;

struct ReducedData {
  EigenPair ep;
  std::array<TruncatedSeries, 3> origin;
  std::array<TruncatedSeries, 3> origin_derivative;
  std::array<bool, 3> smooth{};
  double phi_prime_one = 0.0;

  ReducedValues evaluate(double r) const {
    if (!(r >= 0.0 && r <= 1.0)) throw DomainError("reduced integrand: r must lie in [0, 1]");
    ReducedValues out;
    if (r < kOriginSeriesRadius) {
      for (int k = 0; k < 3; ++k) {
        out.f[k] = origin[k](r);
        out.df[k] = origin_derivative[k](r);
      }
      return out;
    }
    // Taylor jets in t = s - r.
    const auto d = ep.derivs_from_bessel(r);
    const TruncatedSeries phi(0, {d[0], d[1], d[2] / 2.0, d[3] / 6.0, d[4] / 24.0});
    std::vector<double> rp(5, 0.0);
    double binom = 1.0;
    const int m = ep.n - 1;
    for (int k = 0; k <= m && k < 5; ++k) {
      rp[k] = binom * std::pow(r, m - k);
      binom = binom * (m - k) / (k + 1);
    }
    const TruncatedSeries dphi = phi.derivative();
    TruncatedSeries f = (TruncatedSeries(0, rp) * phi) / dphi;
    for (int k = 0; k < 3; ++k) {
      const TruncatedSeries df = f.derivative();
      out.f[k] = f.coefficient(0);
      out.df[k] = df.coefficient(0);
      if (k < 2) f = df / dphi;
    }
    return out;
  }
};

}  // namespace detail

ReducedIntegrand::ReducedIntegrand(std::shared_ptr<const detail::ReducedData> data, int level)
    : data_(std::move(data)), level_(level) {}

int ReducedIntegrand::n() const { return data_->ep.n; }

ReducedValues ReducedIntegrand::evaluate_all(double r) const { return data_->evaluate(r); }

double ReducedIntegrand::operator()(double r) const { return data_->evaluate(r).f[level_ - 1]; }

double ReducedIntegrand::derivative(double r) const { return data_->evaluate(r).df[level_ - 1]; }

namespace {

double series_limit(const TruncatedSeries& s, const char* what) {
  if (s.empty() || s.valuation() > 0) return 0.0;
  if (s.valuation() == 0) return s.leading();
  throw DomainError(std::string(what) + " is singular at r = 0 in this dimension");
}

}  // namespace

double ReducedIntegrand::at_zero() const { return series_limit(data_->origin[level_ - 1], "reduced integrand"); }

double ReducedIntegrand::derivative_at_zero() const {
  return series_limit(data_->origin_derivative[level_ - 1], "reduced integrand derivative");
}

double ReducedIntegrand::at_one() const {
  const double p = data_->phi_prime_one;
  switch (level_) {
    case 1: return 0.0;
    case 2: return 1.0 / p;
    default: return 4.0 * (data_->ep.n - 1) / (p * p);
  }
}

bool ReducedIntegrand::smooth() const { return data_->smooth[level_ - 1]; }

const TruncatedSeries& ReducedIntegrand::origin_series() const { return data_->origin[level_ - 1]; }

const ReducedIntegrand& ReducedIntegrandSet::level(int k) const {
  switch (k) {
    case 1: return f1;
    case 2: return f2;
    case 3: return f3;
    default: throw DomainError("reduced integrand level must lie in 1..3");
  }
}

ReducedValues ReducedIntegrandSet::evaluate(double r) const { return f1.evaluate_all(r); }

ReducedIntegrandSet reduced_integrands(const EigenPair& ep) {
  auto data = std::make_shared<detail::ReducedData>();
  data->ep = ep;
  data->phi_prime_one = ep.derivs_from_bessel(1.0)[1];

  const std::size_t length = 2 * ep.series.size() - 1;
  std::vector<double> coeffs(length, 0.0);
  for (std::size_t k = 0; k < ep.series.size(); ++k) coeffs[2 * k] = ep.series[k];
  const TruncatedSeries phi(0, coeffs);
  const TruncatedSeries dphi = phi.derivative();
  TruncatedSeries f = (TruncatedSeries::monomial(ep.n - 1, length) * phi) / dphi;
  bool smooth = true;
  for (int k = 0; k < 3; ++k) {
    data->origin[k] = f;
    data->origin_derivative[k] = f.derivative();
    smooth = smooth && f.valuation() >= 0;
    data->smooth[k] = smooth;
    f = data->origin_derivative[k] / dphi;
  }
  std::shared_ptr<const detail::ReducedData> shared = data;
  return {ReducedIntegrand(shared, 1), ReducedIntegrand(shared, 2), ReducedIntegrand(shared, 3)};
}

ReducedIntegrandSet reduced_integrands(int n) { return reduced_integrands(eigenpair(n)); }

}  // namespace resonance
