#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "resonance/oscillatory.hpp"
#include "resonance/periodic_calculus.hpp"
#include "resonance/special_functions.hpp"

namespace resonance {

struct RadialMode {
  int n = 3;
};
struct OneDimMode {};
using ProblemMode = std::variant<RadialMode, OneDimMode>;

// Periodic g keeps its trigonometric form so conditions can use coefficient
// bounds; anything else goes through callbacks.
using Nonlinearity = std::variant<TrigPolynomial, GeneralNonlinearity>;

struct ProblemSpec {
  ProblemMode mode = OneDimMode{};
  Nonlinearity g = TrigPolynomial();
  std::string g_name = "zero";
  // Forcing profile as a function of r (radial) or x (1D); empty means e = 0.
  std::function<double(double)> forcing;
  std::string forcing_name = "zero";
  int mesh_size = 512;
  double newton_tol = 1e-10;
  int max_newton_iters = 50;
};

ProblemSpec one_dim_problem(Nonlinearity g, std::string g_name, std::function<double(double)> e,
                            std::string e_name);
ProblemSpec radial_problem(int n, Nonlinearity g, std::string g_name, std::function<double(double)> e,
                           std::string e_name);
// Forcing catalog: "zero" and "sin3x".
std::function<double(double)> forcing_from_catalog(const std::string& name);

struct ConditionsReport {
  double sup_gprime = 0.0;
  std::string sup_gprime_method;
  double gap = 0.0;
  bool derivative_condition = false;
  double gamma = 0.0;
  double c = 0.0;
  bool growth_condition = false;
  bool passed() const { return derivative_condition && growth_condition; }
};

ConditionsReport resonance_conditions_check(const ProblemSpec& spec);

struct CurvePoint {
  double xi1 = 0.0;
  double mu1 = 0.0;
  std::vector<double> mesh;
  std::vector<double> u_values;
  double eta = 0.0;
  double residual_norm = 0.0;
  int newton_iters = 0;
};

struct SolutionCurve {
  std::vector<CurvePoint> points;
  ProblemSpec problem;
  std::vector<double> failures;
  bool aborted = false;
};

// Uniform-mesh discretization of u'' + ((n-1)/r) u' (or u'') with the
// boundary conditions built in, plus its principal discrete eigenpair.
class Discretization {
 public:
  Discretization(const ProblemMode& mode, int mesh_size);

  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  // (A u)_i = lower_i u_{i-1} + diag_i u_i + upper_i u_{i+1}.
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& diag() const { return diag_; }
  const std::vector<double>& upper() const { return upper_; }
  double lambda() const { return lambda_; }
  const std::vector<double>& phi() const { return phi_; }
  // Continuous eigenvalues of the mode.
  double lambda1() const { return lambda1_; }
  double lambda2() const { return lambda2_; }
  // Index of the node where eta is read (r = 0, or x = pi/2).
  int eta_index() const { return eta_index_; }
  double inner(const std::vector<double>& a, const std::vector<double>& b) const;
  std::vector<double> apply(const std::vector<double>& u) const;
  // max_i sum_j |A_ij|; rounding in stored u alone puts a residual of about
  // eps * this * |u| out of reach, which is 2n/h^2 scale at the radial origin.
  double operator_norm() const { return operator_norm_; }

 private:
  std::vector<double> nodes_, weights_, lower_, diag_, upper_, boundary_, phi_;
  double lambda_ = 0.0, lambda1_ = 0.0, lambda2_ = 0.0, operator_norm_ = 0.0;
  int eta_index_ = 0;
};

class CurveSolver {
 public:
  explicit CurveSolver(ProblemSpec spec);

  const ProblemSpec& spec() const { return spec_; }
  const Discretization& discretization() const { return disc_; }
  const ConditionsReport& conditions() const { return conditions_; }
  // Discrete forcing after removing its component along phi.
  const std::vector<double>& forcing() const { return forcing_; }
  double forcing_projection_removed() const { return forcing_removed_; }

  CurvePoint solve(double xi1, const CurvePoint* initial_guess = nullptr) const;
  SolutionCurve trace(double lo, double hi, double step) const;
  double projection_mu1(const CurvePoint& point) const;
  // Distance max |u/xi1 - phi| against the discrete eigenfunction.
  double distance_to_phi(const CurvePoint& point) const;
  // Largest |u(x) - u(pi - x)| on the 1D mesh.
  double symmetry_defect(const CurvePoint& point) const;

 private:
  double g_value(double u) const;
  double g_derivative(double u) const;

  ProblemSpec spec_;
  Discretization disc_;
  ConditionsReport conditions_;
  std::vector<double> forcing_;
  double forcing_removed_ = 0.0;
};

CurvePoint solve_at_xi1(const ProblemSpec& spec, double xi1, const CurvePoint* initial_guess = nullptr);
SolutionCurve trace_curve(const ProblemSpec& spec, double lo, double hi, double step);
double projection_mu1(const CurvePoint& point, const ProblemSpec& spec);

struct CurveReport {
  OscillationReport sign_report;
  std::vector<double> phi_distance;
  bool distance_tail_decreasing = false;
  double mu_head_max = 0.0;
  double mu_tail_max = 0.0;
  bool mu_decaying = false;
};

CurveReport curve_report(const SolutionCurve& curve, double atol = 1e-12);

// For radial n = 5: f(0, 1) = lambda1 + g(eta)/eta - mu1/eta - e(0)/eta and
// the implied f2'(0) = 75 / f(0, 1)^2, which tends to 75/lambda1^2.
struct OriginCrossCheck {
  double f01 = 0.0;
  double f2_prime_0 = 0.0;
  double limit = 0.0;
};
OriginCrossCheck origin_cross_check(const CurvePoint& point, const ProblemSpec& spec);

}  // namespace resonance
