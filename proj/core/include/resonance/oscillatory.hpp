#pragma once

#include <array>
#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "resonance/periodic_calculus.hpp"
#include "resonance/series.hpp"
#include "resonance/special_functions.hpp"

namespace resonance {

// ---------------------------------------------------------------------------
// Reduced integrands
//   f1 = r^(n-1) phi1 / phi1',  f2 = f1' / phi1',  f3 = f2' / phi1'.

struct ReducedValues {
  std::array<double, 3> f{};
  std::array<double, 3> df{};
};

namespace detail {
struct ReducedData;
}

class ReducedIntegrand {
 public:
  ReducedIntegrand(std::shared_ptr<const detail::ReducedData> data, int level);

  int n() const;
  int level() const { return level_; }
  double operator()(double r) const;
  double derivative(double r) const;
  // Every level at once; the levels share one computation.
  ReducedValues evaluate_all(double r) const;
  // Limit at r -> 0 from the origin series; DomainError when f blows up there.
  double at_zero() const;
  double derivative_at_zero() const;
  // Closed forms: f1(1) = 0, f2(1) = 1/phi1'(1), f3(1) = 4(n-1)/phi1'(1)^2.
  double at_one() const;
  // True when f_level (and every lower level) is smooth on [0, 1].
  bool smooth() const;
  // Laurent expansion of f_level about r = 0.
  const TruncatedSeries& origin_series() const;

 private:
  std::shared_ptr<const detail::ReducedData> data_;
  int level_;
};

struct ReducedIntegrandSet {
  ReducedIntegrand f1;
  ReducedIntegrand f2;
  ReducedIntegrand f3;

  const ReducedIntegrand& level(int k) const;
  // All three levels and their derivatives at r in [0, 1].
  ReducedValues evaluate(double r) const;
};

ReducedIntegrandSet reduced_integrands(const EigenPair& ep);
ReducedIntegrandSet reduced_integrands(int n);

// ---------------------------------------------------------------------------
// The projection K(xi) = int_0^1 g(xi phi1(r)) phi1(r) r^(n-1) dr.

// Absolute tolerance used by the quadratures for argument xi.
double quadrature_tolerance(double xi);

class RadialIntegral {
 public:
  explicit RadialIntegral(int n);
  explicit RadialIntegral(EigenPair ep);

  const EigenPair& eigenpair() const { return ep_; }
  const ReducedIntegrandSet& reduced() const { return reduced_; }
  int dimension() const { return ep_.n; }

  double direct(const TrigPolynomial& g, double xi) const;
  // Boundary terms plus remaining integral after `parts` integrations by
  // parts (1..3). DomainError when f_parts is not smooth up to r = 0.
  double by_parts(const AntiderivativeChain& chain, double xi, int parts) const;
  bool parts_admissible(int parts) const;
  // Leading large-xi behaviour for this dimension.
  double asymptotic(const AntiderivativeChain& chain, double xi, bool include_endpoint_correction = false) const;
  // r-grid on which phi1 drops by `phase_step` per panel.
  std::vector<double> phase_breakpoints(double phase_step) const;

 private:
  EigenPair ep_;
  ReducedIntegrandSet reduced_;
};

double k_direct(int n, const TrigPolynomial& g, double xi);
double k_ibp(int n, const AntiderivativeChain& chain, double xi, int parts);
double dimension_asymptotic(int n, const AntiderivativeChain& chain, double xi);

// ---------------------------------------------------------------------------
// Stationary phase.

// Leading term of int_0^1 f e^{i xi phi} dx with phi'(0) = 0, phi''(0) < 0.
std::complex<double> stationary_phase_leading(double f0, double phi0, double phi_pp0, double xi);

struct PhaseLeading {
  double value = 0.0;
  int delta = 0;
  // h'(xi phi(0)) vanished: the leading formula does not apply.
  bool degenerate = false;
};

// Leading term of int_0^1 f sin h(xi phi(x)) dx.
PhaseLeading generalized_phase_leading(double f0, double h_at, double h_prime_at, double phi_pp0, double xi);

struct PhaseFunction {
  std::function<double(double)> phi;
  std::function<double(double)> dphi;
  std::function<double(double)> inverse;
  double phi0 = 1.0;
  double phi_pp0 = -1.0;
  double phi_at_one = 0.0;
};

// phi(x) = 1 - x^2 / 2 on [0, 1].
PhaseFunction quadratic_phase();

// int_0^1 f(x) sin h(xi phi(x)) dx, with panels of `phase_step / xi` in phi.
double phase_sine_integral(const std::function<double(double)>& f, const PhaseFunction& phase, const HTransform& h,
                           double xi, double phase_step);

struct PhaseExampleSample {
  double xi = 0.0;
  double quadrature = 0.0;
  double leading = 0.0;
  bool degenerate = false;
};

// g = sin^3, h = asin(g), phi = 1 - x^2/2, f = 1.
PhaseExampleSample sine_cubed_phase_example(double xi);

// ---------------------------------------------------------------------------
// Sign changes and verdicts.

enum class Verdict { Infinite, Finite, Undetermined };
std::string to_string(Verdict v);

struct OscillationReport {
  std::vector<double> xi_grid;
  std::vector<double> values;
  std::vector<std::pair<double, double>> sign_changes;
  int count = 0;
  Verdict verdict = Verdict::Undetermined;
  std::string verdict_basis;
};

using NoiseFloor = std::function<double(double)>;

// Samples on a uniform grid of `base_points`, bisects each sign change to
// width 1e-4. A change whose grid values are both below the noise floor is
// discarded.
OscillationReport sign_changes(const std::function<double(double)>& sampler, double lo, double hi, int base_points,
                               const NoiseFloor& atol);
OscillationReport sign_changes(const std::function<double(double)>& sampler, double lo, double hi, int base_points,
                               double atol);
// Default noise floor: 10x the quadrature tolerance at xi.
NoiseFloor default_noise_floor();

// Same bookkeeping for data that cannot be resampled (no refinement).
OscillationReport sign_changes_from_samples(const std::vector<double>& xs, const std::vector<double>& ys,
                                            double atol);

struct VerdictRecord {
  Verdict verdict = Verdict::Undetermined;
  std::string basis;
  // For the amplitude comparisons: F(xi) = offset + amplitude-part(xi) with
  // the amplitude part ranging over [amplitude_min, amplitude_max].
  double offset = 0.0;
  double amplitude_min = 0.0;
  double amplitude_max = 0.0;
};

VerdictRecord classify_oscillation(int n, const AntiderivativeChain& chain);
VerdictRecord classify_oscillation(const RadialIntegral& ctx, const AntiderivativeChain& chain);

// ---------------------------------------------------------------------------
// Generalized Riemann-Lebesgue decay of int_0^1 g(xi x) f(x) dx.

struct DecayRecord {
  std::vector<double> xi;
  std::vector<double> values;
  std::vector<double> envelope;
  double slope = 0.0;
  bool violation = false;
};

// Weight given as f(x, 1 - x); the second argument is exact near x = 1,
// where forming 1 - x from a rounded x would lose the singular part.
using EndpointWeight = std::function<double(double, double)>;

// f may have integrable singularities at x = 0 and x = 1. The envelope at
// xi_k is max |I| over 17 samples of [xi_k, xi_k + period].
DecayRecord riemann_lebesgue_decay(const TrigPolynomial& g, const EndpointWeight& f,
                                   const std::vector<double>& xi_list);
DecayRecord riemann_lebesgue_decay(const TrigPolynomial& g, const std::function<double(double)>& f,
                                   const std::vector<double>& xi_list);
double weighted_periodic_integral(const TrigPolynomial& g, const EndpointWeight& f, double xi);
double weighted_periodic_integral(const TrigPolynomial& g, const std::function<double(double)>& f, double xi);
// psi(x) = d/dx phi1^{-1}(x), singular like (1 - x)^(-1/2) at x = 1.
EndpointWeight inverse_phase_weight(const EigenPair& ep);

// ---------------------------------------------------------------------------
// One-dimensional problem on (0, pi).

// I(xi) = int_0^pi g(xi sin x) sin x dx.
double half_wave_integral(const GeneralNonlinearity& g, double xi);
// Same quantity as 2 int_0^1 g(xi y) y / sqrt(1 - y^2) dy.
double half_wave_integral_y_form(const GeneralNonlinearity& g, double xi);

// H(u) = int_0^u g(t) t dt, cached at breakpoints up to `cached_to`.
class MomentFunction {
 public:
  MomentFunction(GeneralNonlinearity g, double cached_to);
  double operator()(double u) const;
  const GeneralNonlinearity& nonlinearity() const { return g_; }

 private:
  GeneralNonlinearity g_;
  double step_;
  std::vector<double> cumulative_;
};

double moment_integral(const GeneralNonlinearity& g, double u);

struct MomentTestRecord {
  std::vector<double> xi_seq;   // maxima of H with H > eps
  std::vector<double> eta_seq;  // minima of H with H < -eps
  std::vector<double> h_at_xi;
  std::vector<double> h_at_eta;
  bool satisfied = false;
};

MomentTestRecord moment_sign_test(const GeneralNonlinearity& g, double u_max, double eps);

}  // namespace resonance
