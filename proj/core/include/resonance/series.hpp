#pragma once

#include <cstddef>
#include <vector>

namespace resonance {

// Truncated Laurent series  t^v * sum_{k<m} c_k t^k + O(t^(v+m)).
// Arithmetic keeps track of how many coefficients remain exact. Leading
// coefficients that are exactly zero are dropped, which keeps the valuation
// honest for the structurally even/odd series this library builds.
class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  TruncatedSeries(int valuation, std::vector<double> coeffs);

  // t^p with `length` known coefficients (the rest are exactly zero).
  static TruncatedSeries monomial(int power, std::size_t length);

  int valuation() const { return valuation_; }
  std::size_t length() const { return coeffs_.size(); }
  const std::vector<double>& coeffs() const { return coeffs_; }
  bool empty() const { return coeffs_.empty(); }
  // Coefficient of t^p (0 below the valuation).
  double coefficient(int power) const;
  // Leading coefficient, i.e. the limit of t^(-v) * s(t) as t -> 0.
  double leading() const;

  double operator()(double t) const;
  TruncatedSeries derivative() const;

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b);

 private:
  void strip();

  int valuation_ = 0;
  std::vector<double> coeffs_;
};

}  // namespace resonance
