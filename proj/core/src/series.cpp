#include "resonance/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace resonance {

TruncatedSeries::TruncatedSeries(int valuation, std::vector<double> coeffs)
    : valuation_(valuation), coeffs_(std::move(coeffs)) {
  strip();
}

TruncatedSeries TruncatedSeries::monomial(int power, std::size_t length) {
  std::vector<double> c(length, 0.0);
  if (length > 0) c[0] = 1.0;
  return TruncatedSeries(power, std::move(c));
}

void TruncatedSeries::strip() {
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead] == 0.0) ++lead;
  if (lead == 0) return;
  coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
  valuation_ += static_cast<int>(lead);
}

double TruncatedSeries::coefficient(int power) const {
  const int k = power - valuation_;
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0.0;
  return coeffs_[k];
}

double TruncatedSeries::leading() const { return coeffs_.empty() ? 0.0 : coeffs_.front(); }

double TruncatedSeries::operator()(double t) const {
  double s = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) s = s * t + *it;
  return s * std::pow(t, valuation_);
}

TruncatedSeries TruncatedSeries::derivative() const {
  std::vector<double> c(coeffs_.size());
  for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k] = (valuation_ + static_cast<int>(k)) * coeffs_[k];
  return TruncatedSeries(valuation_ - 1, std::move(c));
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  const std::size_t m = std::min(a.length(), b.length());
  std::vector<double> c(m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t j = 0; j <= k; ++j) c[k] += a.coeffs_[j] * b.coeffs_[k - j];
  }
  return TruncatedSeries(a.valuation_ + b.valuation_, std::move(c));
}

TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (b.empty() || b.coeffs_[0] == 0.0) throw std::domain_error("TruncatedSeries: division by a zero series");
  const std::size_t m = std::min(a.length(), b.length());
  std::vector<double> c(m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    double s = a.coeffs_[k];
    for (std::size_t j = 1; j <= k; ++j) s -= b.coeffs_[j] * c[k - j];
    c[k] = s / b.coeffs_[0];
  }
  return TruncatedSeries(a.valuation_ - b.valuation_, std::move(c));
}

}  // namespace resonance
