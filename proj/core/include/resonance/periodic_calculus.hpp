#pragma once

#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace resonance {

// g(u) = sum_{k=1..K} a_k cos(k w u) + b_k sin(k w u), w = 2 pi / period.
// No constant term, so the mean over a period is zero by construction.
class TrigPolynomial {
 public:
  static constexpr int kMaxDegree = 64;

  TrigPolynomial() = default;
  TrigPolynomial(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs,
                 double period = 2.0 * std::numbers::pi);

  double period() const { return period_; }
  double frequency() const { return omega_; }
  int degree() const { return static_cast<int>(a_.size()); }
  // Index k-1 holds the coefficient of harmonic k.
  const std::vector<double>& cos_coeffs() const { return a_; }
  const std::vector<double>& sin_coeffs() const { return b_; }
  bool is_zero() const;

  double operator()(double u) const;
  double derivative(double u, int order = 1) const;
  TrigPolynomial differentiate() const;
  TrigPolynomial antiderivative() const;

  // sum_k |k w|^order * sqrt(a_k^2 + b_k^2): an upper bound for sup |g^(order)|.
  double coefficient_bound(int order = 0) const;
  // max over `samples` equispaced points of one period of |g^(order)|.
  double grid_sup(int order = 0, int samples = 2048) const;
  double grid_max(int order = 0, int samples = 2048) const;
  double grid_min(int order = 0, int samples = 2048) const;

 private:
  std::vector<double> a_;
  std::vector<double> b_;
  double period_ = 2.0 * std::numbers::pi;
  double omega_ = 1.0;
};

struct ProjectionResult {
  TrigPolynomial poly;
  double discarded_mean;
};

// Discrete Fourier projection of a periodic callback, truncated at `degree`.
ProjectionResult project_periodic(const std::function<double(double)>& g, double period,
                                  int samples = 4096, int degree = TrigPolynomial::kMaxDegree);

struct AntiderivativeChain {
  TrigPolynomial g;
  TrigPolynomial g1;
  TrigPolynomial g2;
  TrigPolynomial g3;
  double g2_at_0 = 0.0;
  double g3_at_0 = 0.0;
  double sup_g1 = 0.0;
  double sup_gprime = 0.0;

  const TrigPolynomial& level(int k) const;
};

AntiderivativeChain antiderivative_chain(const TrigPolynomial& g);

struct ClassifierConstants {
  double g2_at_0;
  double g3_at_0;
  double sup_g1;
  double sup_gprime;
};

ClassifierConstants classifier_constants(const AntiderivativeChain& chain);

// h(u) = asin(level(u) / normalization).
class HTransform {
 public:
  HTransform(TrigPolynomial level, double normalization);

  double operator()(double u) const;
  // At points where |level| = normalization the one-sided limit from the
  // left is returned; it exists whenever level'' is finite there.
  double derivative(double u) const;
  double normalization() const { return norm_; }

 private:
  TrigPolynomial level_;
  double norm_;
};

HTransform h_transform(const TrigPolynomial& level, double normalization);

// A nonlinearity given by callbacks. Periodic catalog entries convert to this
// type; the converse never happens, so the periodic theory cannot be fed a
// general callback by accident.
struct GeneralNonlinearity {
  std::string name;
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  bool periodic = false;
  // g is defined for u > domain_lower.
  double domain_lower = -std::numeric_limits<double>::infinity();
  std::string domain_note;
  // Length over which g completes roughly one oscillation; sets panel sizes.
  double oscillation_scale = 2.0 * std::numbers::pi;

  double operator()(double u) const { return value(u); }
};

GeneralNonlinearity as_general(const TrigPolynomial& g, std::string name);

// Catalog: sin, cos, sin3, sin-27sin3, zero, inline "a1:..,b2:.." lists, and
// the nonperiodic sinsqrt, sinquart, identity.
std::vector<std::string> catalog_names();
std::optional<TrigPolynomial> periodic_from_catalog(const std::string& name);
// Throws DomainError for unknown names.
GeneralNonlinearity general_from_catalog(const std::string& name);
bool is_periodic_name(const std::string& name);

}  // namespace resonance
