#include "resonance/bvp_curve.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "resonance/errors.hpp"

namespace resonance {
namespace {

constexpr double kPi = std::numbers::pi;

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

using SparseMatrix = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

}  // namespace

ProblemSpec one_dim_problem(Nonlinearity g, std::string g_name, std::function<double(double)> e,
                            std::string e_name) {
  ProblemSpec s;
  s.mode = OneDimMode{};
  s.g = std::move(g);
  s.g_name = std::move(g_name);
  s.forcing = std::move(e);
  s.forcing_name = std::move(e_name);
  return s;
}

ProblemSpec radial_problem(int n, Nonlinearity g, std::string g_name, std::function<double(double)> e,
                           std::string e_name) {
  ProblemSpec s = one_dim_problem(std::move(g), std::move(g_name), std::move(e), std::move(e_name));
  s.mode = RadialMode{n};
  return s;
}

std::function<double(double)> forcing_from_catalog(const std::string& name) {
  if (name == "zero" || name.empty()) return {};
  if (name == "sin3x") return [](double x) { return std::sin(3.0 * x); };
  throw DomainError("unknown forcing '" + name + "'; known forcings: zero sin3x");
}

// ---------------------------------------------------------------------------

Discretization::Discretization(const ProblemMode& mode, int mesh_size) {
  if (mesh_size < 8) throw DomainError("Discretization: mesh_size must be >= 8");
  const int N = mesh_size;
  if (std::holds_alternative<OneDimMode>(mode)) {
    const double h = kPi / N;
    const int m = N - 1;
    nodes_.resize(m);
    for (int i = 0; i < m; ++i) nodes_[i] = (i + 1) * h;
    weights_.assign(m, h);
    lower_.assign(m, 1.0 / (h * h));
    upper_.assign(m, 1.0 / (h * h));
    diag_.assign(m, -2.0 / (h * h));
    lower_[0] = 0.0;
    upper_[m - 1] = 0.0;
    boundary_.assign(m, 0.0);
    boundary_[0] = -1.0 / (h * h);
    boundary_[m - 1] = -1.0 / (h * h);
    lambda1_ = 1.0;
    lambda2_ = 4.0;
    eta_index_ = N / 2 - 1;
  } else {
    const int n = std::get<RadialMode>(mode).n;
    const EigenPair ep = eigenpair(n);
    lambda1_ = ep.lambda1;
    lambda2_ = ep.lambda2;
    const double h = 1.0 / N;
    nodes_.resize(N);
    weights_.resize(N);
    lower_.assign(N, 0.0);
    upper_.assign(N, 0.0);
    diag_.assign(N, 0.0);
    boundary_.assign(N, 0.0);
    // Finite volumes on cells [r_i - h/2, r_i + h/2] with flux r^(n-1) u'.
    auto flux = [&](double r) { return std::pow(r, n - 1); };
    for (int i = 0; i < N; ++i) {
      const double r = i * h;
      nodes_[i] = r;
      const double rp = r + 0.5 * h, rm = std::max(0.0, r - 0.5 * h);
      weights_[i] = (std::pow(rp, n) - std::pow(rm, n)) / n;
      const double sp = flux(rp), sm = i == 0 ? 0.0 : flux(rm);
      const double scale = 1.0 / (h * weights_[i]);
      upper_[i] = i + 1 < N ? sp * scale : 0.0;
      lower_[i] = sm * scale;
      diag_[i] = -(sp + sm) * scale;
      if (i + 1 == N) boundary_[i] = -sp * scale;
    }
    eta_index_ = 0;
  }

  for (int i = 0; i < size(); ++i) {
    operator_norm_ = std::max(operator_norm_, std::abs(lower_[i]) + std::abs(diag_[i]) + std::abs(upper_[i]));
  }

  // Principal discrete eigenpair by shifted inverse iteration with Rayleigh
  // quotient updates; A is self-adjoint in the weighted inner product.
  const int m = size();
  std::vector<double> x(m);
  for (int i = 0; i < m; ++i) x[i] = std::max(1e-3, std::cos(0.5 * kPi * i / m));
  double sigma = lambda1_;
  double lambda = sigma;
  for (int it = 0; it < 60; ++it) {
    std::vector<Triplet> t;
    t.reserve(3 * m);
    for (int i = 0; i < m; ++i) {
      if (i > 0) t.emplace_back(i, i - 1, lower_[i]);
      t.emplace_back(i, i, diag_[i] + sigma);
      if (i + 1 < m) t.emplace_back(i, i + 1, upper_[i]);
    }
    SparseMatrix a(m, m);
    a.setFromTriplets(t.begin(), t.end());
    Eigen::SparseLU<SparseMatrix> lu;
    lu.compute(a);
    if (lu.info() != Eigen::Success) break;
    Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(x.data(), m);
    Eigen::VectorXd y = lu.solve(rhs);
    if (lu.info() != Eigen::Success || !y.allFinite()) break;
    const double norm = y.cwiseAbs().maxCoeff();
    for (int i = 0; i < m; ++i) x[i] = y[i] / norm;
    const auto ax = apply(x);
    const double next = -inner(x, ax) / inner(x, x);
    const bool done = std::abs(next - lambda) <= 1e-15 * std::abs(next);
    lambda = next;
    if (done) break;
    // Keep the shift slightly off the eigenvalue so the solve stays regular.
    if (it >= 2) sigma = lambda * (1.0 + 1e-12);
  }
  lambda_ = lambda;
  const double ref = eta_index_ < m ? x[eta_index_] : 1.0;
  double scale = ref;
  if (std::holds_alternative<OneDimMode>(mode)) {
    scale = 0.0;
    for (double v : x) scale = std::abs(v) > std::abs(scale) ? v : scale;
  }
  phi_.resize(m);
  for (int i = 0; i < m; ++i) phi_[i] = x[i] / scale;
}

double Discretization::inner(const std::vector<double>& a, const std::vector<double>& b) const {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += weights_[i] * a[i] * b[i];
  return s;
}

std::vector<double> Discretization::apply(const std::vector<double>& u) const {
  const int m = size();
  std::vector<double> out(m);
  // Difference form keeps rounding proportional to the jumps in u rather
  // than to u / h^2.
  for (int i = 0; i < m; ++i) {
    double s = boundary_[i] * u[i];
    if (i > 0) s -= lower_[i] * (u[i] - u[i - 1]);
    if (i + 1 < m) s += upper_[i] * (u[i + 1] - u[i]);
    out[i] = s;
  }
  return out;
}

// ---------------------------------------------------------------------------

ConditionsReport resonance_conditions_check(const ProblemSpec& spec) {
  ConditionsReport rep;
  double l1 = 1.0, l2 = 4.0;
  if (const auto* radial = std::get_if<RadialMode>(&spec.mode)) {
    const EigenPair ep = eigenpair(radial->n);
    l1 = ep.lambda1;
    l2 = ep.lambda2;
  }
  rep.gap = l2 - l1;
  if (const auto* trig = std::get_if<TrigPolynomial>(&spec.g)) {
    rep.sup_gprime = trig->coefficient_bound(1);
    rep.sup_gprime_method = "coefficient sum";
    rep.gamma = 0.0;
    rep.c = trig->coefficient_bound(0);
  } else {
    const auto& g = std::get<GeneralNonlinearity>(spec.g);
    const double lo = std::max(-200.0, g.domain_lower + 1e-3);
    const double hi = 200.0;
    const int samples = 400001;
    double sup_d = -std::numeric_limits<double>::infinity();
    double near = 0.0, far = 0.0, ratio = 0.0;
    for (int j = 0; j < samples; ++j) {
      const double u = lo + (hi - lo) * j / (samples - 1);
      sup_d = std::max(sup_d, g.derivative(u));
      const double a = std::abs(g(u));
      if (std::abs(u) <= 100.0) {
        near = std::max(near, a);
      } else {
        far = std::max(far, a);
        ratio = std::max(ratio, a / std::abs(u));
      }
    }
    rep.sup_gprime = sup_d;
    rep.sup_gprime_method = "grid scan";
    if (far <= near * (1.0 + 1e-9)) {
      rep.gamma = 0.0;
      rep.c = std::max(near, far);
    } else {
      rep.gamma = ratio;
      double c = 0.0;
      for (int j = 0; j < samples; ++j) {
        const double u = lo + (hi - lo) * j / (samples - 1);
        c = std::max(c, std::abs(g(u)) - ratio * std::abs(u));
      }
      rep.c = c;
    }
  }
  rep.derivative_condition = rep.sup_gprime < rep.gap;
  rep.growth_condition = rep.gamma < rep.gap;
  return rep;
}

// ---------------------------------------------------------------------------

CurveSolver::CurveSolver(ProblemSpec spec)
    : spec_(std::move(spec)), disc_(spec_.mode, spec_.mesh_size), conditions_(resonance_conditions_check(spec_)) {
  const int m = disc_.size();
  forcing_.assign(m, 0.0);
  if (spec_.forcing) {
    for (int i = 0; i < m; ++i) forcing_[i] = spec_.forcing(disc_.nodes()[i]);
  }
  const auto& phi = disc_.phi();
  forcing_removed_ = disc_.inner(forcing_, phi) / disc_.inner(phi, phi);
  for (int i = 0; i < m; ++i) forcing_[i] -= forcing_removed_ * phi[i];
}

double CurveSolver::g_value(double u) const {
  return std::visit([u](const auto& g) { return g(u); }, spec_.g);
}

double CurveSolver::g_derivative(double u) const {
  if (const auto* trig = std::get_if<TrigPolynomial>(&spec_.g)) return trig->derivative(u, 1);
  return std::get<GeneralNonlinearity>(spec_.g).derivative(u);
}

CurvePoint CurveSolver::solve(double xi1, const CurvePoint* initial_guess) const {
  if (!conditions_.passed()) {
    std::ostringstream msg;
    msg << "solve_at_xi1: resonance conditions fail (sup g' = " << conditions_.sup_gprime
        << ", gap = " << conditions_.gap << ", gamma = " << conditions_.gamma << ")";
    throw PreconditionError(msg.str());
  }
  if (!std::isfinite(xi1)) throw DomainError("solve_at_xi1: xi1 must be finite");

  const int m = disc_.size();
  const auto& phi = disc_.phi();
  const auto& w = disc_.weights();
  const double pp = disc_.inner(phi, phi);
  const double lam = disc_.lambda();
  // Stop at newton_tol unless that lies below the rounding floor of A u.
  const double tol = std::max(spec_.newton_tol, 8.0 * std::numeric_limits<double>::epsilon() * disc_.operator_norm());

  std::vector<double> u(m);
  double mu = 0.0;
  if (initial_guess && static_cast<int>(initial_guess->u_values.size()) == m) {
    // Shift along phi so the guess already meets the constraint.
    for (int i = 0; i < m; ++i) u[i] = initial_guess->u_values[i] + (xi1 - initial_guess->xi1) * phi[i];
    mu = initial_guess->mu1;
  } else {
    for (int i = 0; i < m; ++i) u[i] = xi1 * phi[i];
  }

  std::vector<double> f(m);
  double constraint = 0.0;
  // Relative residual max|F| / max(1, max|u|); +inf if g is undefined at u.
  auto evaluate = [&](const std::vector<double>& uu, double mm, std::vector<double>& out, double& cons) {
    try {
      const auto ax = disc_.apply(uu);
      for (int i = 0; i < m; ++i) {
        const double au = ax[i];
        out[i] = au + lam * uu[i] + g_value(uu[i]) - mm * phi[i] - forcing_[i];
      }
    } catch (const DomainError&) {
      return std::numeric_limits<double>::infinity();
    }
    cons = (disc_.inner(uu, phi) - xi1 * pp) / pp;
    return max_abs(out) / std::max(1.0, max_abs(uu));
  };
  auto merit = [](double res, double cons) { return std::max(res, std::abs(cons)); };

  Eigen::SparseLU<SparseMatrix> lu;
  bool analyzed = false;
  auto newton_step = [&](const std::vector<double>& uu, const std::vector<double>& ff, double cons,
                         Eigen::VectorXd& delta) {
    std::vector<Triplet> t;
    t.reserve(5 * m + 1);
    for (int i = 0; i < m; ++i) {
      if (i > 0) t.emplace_back(i, i - 1, disc_.lower()[i]);
      t.emplace_back(i, i, disc_.diag()[i] + lam + g_derivative(uu[i]));
      if (i + 1 < m) t.emplace_back(i, i + 1, disc_.upper()[i]);
      t.emplace_back(i, m, -phi[i]);
      t.emplace_back(m, i, w[i] * phi[i] / pp);
    }
    t.emplace_back(m, m, 0.0);
    SparseMatrix jac(m + 1, m + 1);
    jac.setFromTriplets(t.begin(), t.end());
    if (!analyzed) {
      lu.analyzePattern(jac);
      analyzed = true;
    }
    lu.factorize(jac);
    if (lu.info() != Eigen::Success) return false;
    Eigen::VectorXd rhs(m + 1);
    for (int i = 0; i < m; ++i) rhs[i] = -ff[i];
    rhs[m] = -cons;
    delta = lu.solve(rhs);
    return lu.info() == Eigen::Success && delta.allFinite();
  };

  double res = evaluate(u, mu, f, constraint);
  if (!std::isfinite(res)) throw ConvergenceError("solve_at_xi1: nonlinearity undefined at the initial guess", res);
  std::vector<double> trial_u(m), trial_f(m);
  Eigen::VectorXd delta;
  int iters = 0;
  bool polished = false;
  while (true) {
    const bool converged = res < tol && std::abs(constraint) < 1e-12;
    if (converged && polished) break;
    if (iters >= spec_.max_newton_iters) {
      if (converged) break;
      throw ConvergenceError("solve_at_xi1: Newton did not converge", res);
    }
    if (!newton_step(u, f, constraint, delta)) {
      if (converged) break;
      throw ConvergenceError("solve_at_xi1: singular Jacobian", res);
    }
    ++iters;
    const double current = merit(res, constraint);
    double t = 1.0;
    bool accepted = false;
    for (int halving = 0; halving <= 6; ++halving, t *= 0.5) {
      for (int i = 0; i < m; ++i) trial_u[i] = u[i] + t * delta[i];
      const double trial_mu = mu + t * delta[m];
      double trial_c = 0.0;
      const double trial_res = evaluate(trial_u, trial_mu, trial_f, trial_c);
      const double trial_merit = merit(trial_res, trial_c);
      if (std::isfinite(trial_merit) && (trial_merit < current || (converged && trial_merit <= current))) {
        u.swap(trial_u);
        f.swap(trial_f);
        mu = trial_mu;
        res = trial_res;
        constraint = trial_c;
        accepted = true;
        break;
      }
    }
    if (converged) {
      polished = true;
      continue;
    }
    if (!accepted) throw ConvergenceError("solve_at_xi1: damped Newton step failed to reduce the residual", res);
  }

  CurvePoint p;
  p.xi1 = xi1;
  p.mu1 = mu;
  p.mesh = disc_.nodes();
  p.u_values = std::move(u);
  p.eta = p.u_values[disc_.eta_index()];
  p.residual_norm = res;
  p.newton_iters = iters;
  return p;
}

SolutionCurve CurveSolver::trace(double lo, double hi, double step) const {
  if (!(step > 0.0)) throw DomainError("trace_curve: step must be positive");
  if (!(lo <= hi)) throw DomainError("trace_curve: need lo <= hi");
  SolutionCurve curve;
  curve.problem = spec_;
  const int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
  int consecutive = 0;
  const CurvePoint* prev = nullptr;
  for (int k = 0; k < count; ++k) {
    const double target = k + 1 == count && std::abs(lo + k * step - hi) < 1e-9 * std::max(1.0, std::abs(hi))
                              ? hi
                              : lo + k * step;
    std::optional<CurvePoint> point;
    try {
      point = solve(target, prev);
    } catch (const ConvergenceError&) {
    } catch (const DomainError&) {
    }
    // Sub-step from the last good point with successively halved steps.
    for (double sub = 0.5 * step; !point && prev && sub >= step / 16.0 - 1e-15; sub *= 0.5) {
      try {
        CurvePoint walker = *prev;
        while (walker.xi1 < target - 1e-12) {
          walker = solve(std::min(target, walker.xi1 + sub), &walker);
        }
        point = walker;
      } catch (const ConvergenceError&) {
      } catch (const DomainError&) {
      }
    }
    if (point) {
      curve.points.push_back(std::move(*point));
      prev = &curve.points.back();
      consecutive = 0;
    } else {
      curve.failures.push_back(target);
      if (++consecutive > 10) {
        curve.aborted = true;
        break;
      }
    }
  }
  return curve;
}

double CurveSolver::projection_mu1(const CurvePoint& point) const {
  const auto& phi = disc_.phi();
  std::vector<double> gu(point.u_values.size());
  for (std::size_t i = 0; i < gu.size(); ++i) gu[i] = g_value(point.u_values[i]);
  return (disc_.inner(gu, phi) - disc_.inner(forcing_, phi)) / disc_.inner(phi, phi);
}

double CurveSolver::distance_to_phi(const CurvePoint& point) const {
  const auto& phi = disc_.phi();
  double d = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) d = std::max(d, std::abs(point.u_values[i] / point.xi1 - phi[i]));
  return d;
}

double CurveSolver::symmetry_defect(const CurvePoint& point) const {
  if (!std::holds_alternative<OneDimMode>(spec_.mode)) return 0.0;
  const auto& u = point.u_values;
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) d = std::max(d, std::abs(u[i] - u[u.size() - 1 - i]));
  return d;
}

CurvePoint solve_at_xi1(const ProblemSpec& spec, double xi1, const CurvePoint* initial_guess) {
  return CurveSolver(spec).solve(xi1, initial_guess);
}

SolutionCurve trace_curve(const ProblemSpec& spec, double lo, double hi, double step) {
  return CurveSolver(spec).trace(lo, hi, step);
}

double projection_mu1(const CurvePoint& point, const ProblemSpec& spec) {
  return CurveSolver(spec).projection_mu1(point);
}

CurveReport curve_report(const SolutionCurve& curve, double atol) {
  if (curve.points.size() < 8) throw DomainError("curve_report: need at least 8 points");
  CurveReport rep;
  std::vector<double> xs, ys;
  for (const auto& p : curve.points) {
    xs.push_back(p.xi1);
    ys.push_back(p.mu1);
  }
  rep.sign_report = sign_changes_from_samples(xs, ys, atol);
  const Discretization disc(curve.problem.mode, curve.problem.mesh_size);
  for (const auto& p : curve.points) {
    double d = 0.0;
    for (std::size_t i = 0; i < p.u_values.size(); ++i) {
      d = std::max(d, std::abs(p.u_values[i] / p.xi1 - disc.phi()[i]));
    }
    rep.phi_distance.push_back(d);
  }
  const std::size_t n = curve.points.size();
  auto range_max = [](const std::vector<double>& v, std::size_t a, std::size_t b) {
    double m = 0.0;
    for (std::size_t i = a; i < b; ++i) m = std::max(m, std::abs(v[i]));
    return m;
  };
  rep.distance_tail_decreasing =
      range_max(rep.phi_distance, 3 * n / 4, n) <= range_max(rep.phi_distance, n / 2, 3 * n / 4);
  rep.mu_head_max = range_max(ys, 0, n / 3);
  rep.mu_tail_max = range_max(ys, n - n / 3, n);
  rep.mu_decaying = rep.mu_tail_max < rep.mu_head_max;
  return rep;
}

OriginCrossCheck origin_cross_check(const CurvePoint& point, const ProblemSpec& spec) {
  const auto* radial = std::get_if<RadialMode>(&spec.mode);
  if (!radial || radial->n != 5) throw DomainError("origin_cross_check: defined for radial n = 5");
  if (point.eta == 0.0) throw DomainError("origin_cross_check: eta must be nonzero");
  const EigenPair ep = eigenpair(5);
  const double g_eta = std::visit([&](const auto& g) { return g(point.eta); }, spec.g);
  const double e0 = spec.forcing ? spec.forcing(0.0) : 0.0;
  OriginCrossCheck c;
  c.f01 = ep.lambda1 + g_eta / point.eta - point.mu1 / point.eta - e0 / point.eta;
  c.f2_prime_0 = 75.0 / (c.f01 * c.f01);
  c.limit = 75.0 / (ep.lambda1 * ep.lambda1);
  return c;
}

}  // namespace resonance
