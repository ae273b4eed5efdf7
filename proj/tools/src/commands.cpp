#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "resonance/bvp_curve.hpp"
#include "resonance/errors.hpp"
#include "resonance/oscillatory.hpp"
#include "resonance/periodic_calculus.hpp"
#include "resonance/special_functions.hpp"

namespace resonance::cli {
namespace {

using nlohmann::json;

std::vector<double> grid(double lo, double hi, int samples) {
  std::vector<double> xs(samples);
  for (int i = 0; i < samples; ++i) xs[i] = lo + (hi - lo) * i / (samples - 1);
  return xs;
}

TrigPolynomial periodic_g(const std::string& name) {
  auto p = periodic_from_catalog(name);
  if (!p) throw DomainError("nonlinearity '" + name + "' is not periodic; this command needs a periodic g");
  return *p;
}

Nonlinearity any_g(const std::string& name) {
  if (auto p = periodic_from_catalog(name)) return *p;
  return general_from_catalog(name);
}

json brackets(const OscillationReport& rep) {
  json out = json::array();
  for (const auto& [a, b] : rep.sign_changes) out.push_back({a, b});
  return out;
}

json report_json(const OscillationReport& rep) {
  return {{"count", rep.count},
          {"brackets", brackets(rep)},
          {"data_verdict", to_string(rep.verdict)},
          {"verdict_basis", rep.verdict_basis}};
}

// Refined scan when the grid is dense enough for it; coarser grids only
// report the brackets they see.
OscillationReport scan(const std::function<double(double)>& sampler, const RunConfig& c) {
  constexpr int kMinRefinedPoints = 64;
  if (c.samples >= kMinRefinedPoints) {
    return sign_changes(sampler, c.xi_min, c.xi_max, c.samples, default_noise_floor());
  }
  const std::vector<double> xs = grid(c.xi_min, c.xi_max, c.samples);
  std::vector<double> ys;
  for (double x : xs) ys.push_back(sampler(x));
  // The floor is non-increasing in xi; its value at xi_min covers the window.
  return sign_changes_from_samples(xs, ys, default_noise_floor()(c.xi_min));
}

json maybe(const std::function<double()>& f) {
  try {
    return number(f());
  } catch (const DomainError&) {
    return nullptr;
  }
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (m < 2) return std::nan("");
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

const char* kProjection = "K(xi) = int_0^1 g(xi phi1(r)) phi1(r) r^(n-1) dr";
const char* kEigen = "phi1'' + ((n-1)/r) phi1' + lambda1 phi1 = 0, phi1'(0) = phi1(1) = 0, phi1(0) = 1";
const char* kReduced = "f1 = r^(n-1) phi1/phi1', f2 = f1'/phi1', f3 = f2'/phi1'";
const char* kBvp = "u'' + ((n-1)/r) u' + lambda1 u + g(u) = mu1 phi1 + e, u'(0) = u(1) = 0";
const char* kBvp1d = "u'' + u + g(u) = mu1 sin x + e(x) on (0, pi), u(0) = u(pi) = 0";
const char* kProjectionIdentity = "mu1 <phi1, phi1> = <g(u), phi1>";
const char* kHalfWave = "I(xi) = int_0^pi g(xi sin x) sin x dx";
const char* kMoment = "H(u) = int_0^u g(t) t dt";

Artifact eigen_command(const RunConfig& c) {
  const EigenPair ep = eigenpair(c.dim);
  Artifact a;
  a.results = {{"n", ep.n},
               {"nu1", ep.nu1},
               {"lambda1", ep.lambda1},
               {"lambda2", ep.lambda2},
               {"c0", ep.c0},
               {"phi1_pp0", ep.phi1_pp0},
               {"phi1_prime_at_1", ep.derivs(1.0, 1)[1]},
               {"series_coefficients", ep.series}};
  Table t{{"r", "phi1", "phi1_prime"}, {}};
  Series s{"phi1, n = " + std::to_string(ep.n), "r", "phi1(r)", {}, {}};
  for (double r : grid(0.0, 1.0, c.samples)) {
    const auto d = ep.derivs(r, 1);
    t.rows.push_back({r, d[0], d[1]});
    s.x.push_back(r);
    s.y.push_back(d[0]);
  }
  a.table = std::move(t);
  a.plot = std::move(s);
  a.formulas = {kEigen, "lambda1 = nu1^2, nu1 = first zero of J_((n-2)/2)", "lambda2 = (first zero of J_(n/2))^2"};
  return a;
}

Artifact integral_command(const RunConfig& c) {
  const TrigPolynomial g = periodic_g(c.g);
  const RadialIntegral ctx(c.dim);
  auto sampler = [&](double xi) { return ctx.direct(g, xi); };
  const OscillationReport rep = scan(sampler, c);
  Artifact a;
  a.results = {{"n", c.dim}, {"g", c.g}, {"sign_changes", report_json(rep)}};
  Table t{{"xi", "K"}, {}};
  for (std::size_t i = 0; i < rep.xi_grid.size(); ++i) t.rows.push_back({rep.xi_grid[i], rep.values[i]});
  a.plot = Series{"K(xi), n = " + std::to_string(c.dim) + ", g = " + c.g, "xi", "K(xi)", rep.xi_grid, rep.values};
  a.table = std::move(t);
  a.formulas = {kProjection, "noise floor = 10 x max(1e-12, 1e-10/xi)"};
  return a;
}

json endpoint_constants(int n) {
  const RadialIntegral ctx(n);
  const auto& f = ctx.reduced();
  json out;
  for (int k = 1; k <= 3; ++k) {
    const auto& fk = f.level(k);
    const std::string p = "f" + std::to_string(k);
    out[p + "_at_1"] = fk.at_one();
    out[p + "_at_0"] = maybe([&] { return fk.at_zero(); });
    out[p + "_prime_at_0"] = maybe([&] { return fk.derivative_at_zero(); });
    out[p + "_smooth"] = fk.smooth();
  }
  const double lam = ctx.eigenpair().lambda1;
  if (n == 5) out["f2_prime_at_0_closed_form"] = 75.0 / (lam * lam);
  if (n == 6) out["f3_at_0_closed_form"] = -1728.0 / (lam * lam * lam);
  return out;
}

Artifact ibp_command(const RunConfig& c) {
  Artifact a;
  a.formulas = {kProjection, kReduced, "f2(1) = 1/phi1'(1), f3(1) = 4(n-1)/phi1'(1)^2"};
  a.results = endpoint_constants(c.dim);
  a.results["n"] = c.dim;
  if (c.endpoints) return a;

  const TrigPolynomial g = periodic_g(c.g);
  const AntiderivativeChain chain = antiderivative_chain(g);
  const RadialIntegral ctx(c.dim);
  std::vector<int> parts;
  for (int k = 1; k <= 3; ++k) {
    if ((c.parts == 0 || c.parts == k) && ctx.parts_admissible(k)) parts.push_back(k);
  }
  if (c.parts != 0 && parts.empty()) {
    throw DomainError("ibp: " + std::to_string(c.parts) + " integrations by parts are not admissible for n = " +
                      std::to_string(c.dim));
  }
  Table t{{"xi", "K_direct"}, {}};
  for (int k : parts) t.columns.push_back("K_ibp" + std::to_string(k));
  double worst = 0.0;
  for (double xi : grid(c.xi_min, c.xi_max, c.samples)) {
    std::vector<double> row{xi, ctx.direct(g, xi)};
    for (int k : parts) {
      row.push_back(ctx.by_parts(chain, xi, k));
      worst = std::max(worst, std::abs(row.back() - row[1]));
    }
    t.rows.push_back(std::move(row));
  }
  a.results["g"] = c.g;
  a.results["parts"] = parts;
  a.results["max_abs_difference"] = worst;
  a.table = std::move(t);
  return a;
}

Artifact asym_command(const RunConfig& c) {
  const TrigPolynomial g = periodic_g(c.g);
  const AntiderivativeChain chain = antiderivative_chain(g);
  const RadialIntegral ctx(c.dim);
  Table t{{"xi", "K_direct", "asymptotic", "residual"}, {}};
  std::vector<double> xs, rs;
  double worst = 0.0;
  for (double xi : grid(c.xi_min, c.xi_max, c.samples)) {
    const double k = ctx.direct(g, xi), lead = ctx.asymptotic(chain, xi);
    t.rows.push_back({xi, k, lead, k - lead});
    xs.push_back(xi);
    rs.push_back(std::abs(k - lead));
    worst = std::max(worst, std::abs(k - lead));
  }
  Artifact a;
  a.results = {{"n", c.dim},
               {"g", c.g},
               {"max_abs_residual", worst},
               {"residual_loglog_slope", number(loglog_slope(xs, rs))}};
  a.plot = Series{"K(xi) minus leading term, n = " + std::to_string(c.dim), "xi", "residual", xs, {}};
  for (const auto& row : t.rows) a.plot->y.push_back(row[3]);
  a.table = std::move(t);
  a.formulas = {kProjection, kReduced,
                "leading terms: boundary values f_k(1) g_k(0) and f_k(0) g_k(xi) scaled by xi^-k, or the "
                "stationary-phase term at r = 0"};
  return a;
}

Artifact classify_command(const RunConfig& c) {
  const TrigPolynomial g = periodic_g(c.g);
  const AntiderivativeChain chain = antiderivative_chain(g);
  const RadialIntegral ctx(c.dim);
  const VerdictRecord v = classify_oscillation(ctx, chain);
  const ClassifierConstants k = classifier_constants(chain);
  const OscillationReport rep =
      scan([&](double xi) { return ctx.direct(g, xi); }, c);
  Artifact a;
  a.results = {{"n", c.dim},
               {"g", c.g},
               {"verdict", to_string(v.verdict)},
               {"basis", v.basis},
               {"offset", v.offset},
               {"amplitude_min", v.amplitude_min},
               {"amplitude_max", v.amplitude_max},
               {"g2_at_0", k.g2_at_0},
               {"g3_at_0", k.g3_at_0},
               {"sup_g1", k.sup_g1},
               {"sup_gprime", k.sup_gprime},
               {"window_scan", report_json(rep)}};
  Table t{{"xi", "K"}, {}};
  for (std::size_t i = 0; i < rep.xi_grid.size(); ++i) t.rows.push_back({rep.xi_grid[i], rep.values[i]});
  a.table = std::move(t);
  a.plot = Series{"K(xi), n = " + std::to_string(c.dim) + ", g = " + c.g, "xi", "K(xi)", rep.xi_grid, rep.values};
  a.formulas = {kProjection, "g1' = g, g2' = g1, g3' = g2, each periodic with mean zero"};
  return a;
}

json conditions_json(const ConditionsReport& r) {
  return {{"sup_gprime", r.sup_gprime},
          {"sup_gprime_method", r.sup_gprime_method},
          {"gap_lambda2_minus_lambda1", r.gap},
          {"derivative_condition", r.derivative_condition},
          {"gamma", r.gamma},
          {"c", r.c},
          {"growth_condition", r.growth_condition}};
}

Artifact curve_artifact(const ProblemSpec& spec, double lo, double hi, double step, const std::string& title) {
  const CurveSolver solver(spec);
  const SolutionCurve curve = solver.trace(lo, hi, step);
  Artifact a;
  Table t{{"xi1", "mu1", "eta", "residual", "newton_iters"}, {}};
  Series s{title, "xi1", "mu1", {}, {}};
  double worst_identity = 0.0;
  for (const auto& p : curve.points) {
    t.rows.push_back({p.xi1, p.mu1, p.eta, p.residual_norm, static_cast<double>(p.newton_iters)});
    s.x.push_back(p.xi1);
    s.y.push_back(p.mu1);
    worst_identity = std::max(worst_identity, std::abs(solver.projection_mu1(p) - p.mu1) / p.residual_norm);
  }
  a.results = {{"conditions", conditions_json(solver.conditions())},
               {"points", curve.points.size()},
               {"failures", curve.failures},
               {"aborted", curve.aborted},
               {"max_projection_defect_over_residual", worst_identity},
               {"discrete_lambda1", solver.discretization().lambda()}};
  if (curve.points.size() >= 8) {
    const CurveReport rep = curve_report(curve);
    a.results["mu1_sign_changes"] = report_json(rep.sign_report);
    a.results["distance_to_phi_tail_decreasing"] = rep.distance_tail_decreasing;
    a.results["mu1_head_max"] = rep.mu_head_max;
    a.results["mu1_tail_max"] = rep.mu_tail_max;
    a.results["mu1_decaying"] = rep.mu_decaying;
    if (!curve.points.empty()) a.results["final_distance_to_phi"] = rep.phi_distance.back();
  }
  a.table = std::move(t);
  a.plot = std::move(s);
  return a;
}

Artifact curve_command(const RunConfig& c) {
  const auto e = forcing_from_catalog(c.e);
  ProblemSpec spec;
  if (c.mode == "radial") {
    spec = radial_problem(c.dim, any_g(c.g), c.g, e, c.e);
  } else if (c.mode == "oned") {
    spec = one_dim_problem(any_g(c.g), c.g, e, c.e);
  } else {
    throw DomainError("curve: --mode must be radial or oned");
  }
  spec.mesh_size = c.mesh;
  spec.newton_tol = c.tol;
  Artifact a = curve_artifact(spec, c.xi1_min, c.xi1_max, c.step, "mu1(xi1), g = " + c.g + ", e = " + c.e);
  a.formulas = {c.mode == "radial" ? kBvp : kBvp1d, kProjectionIdentity,
                "constraint <u, phi1>_w = xi1 <phi1, phi1>_w with w = r^(n-1)"};
  return a;
}

Artifact oned_command(const RunConfig& c) {
  const GeneralNonlinearity g = general_from_catalog(c.g);
  const MomentFunction moment(g, std::max(c.u_max, c.xi_max));
  Table t{{"xi", "I_1d", "H"}, {}};
  std::vector<double> xs, is;
  for (double xi : grid(c.xi_min, c.xi_max, c.samples)) {
    const double v = half_wave_integral(g, xi);
    t.rows.push_back({xi, v, xi >= 0.0 ? moment(xi) : std::nan("")});
    xs.push_back(xi);
    is.push_back(v);
  }
  const MomentTestRecord h = moment_sign_test(g, c.u_max, c.eps);
  Artifact a;
  a.results = {{"g", c.g},
               {"h_test",
                {{"satisfied", h.satisfied},
                 {"xi_seq", h.xi_seq},
                 {"h_at_xi", h.h_at_xi},
                 {"eta_seq", h.eta_seq},
                 {"h_at_eta", h.h_at_eta},
                 {"u_max", c.u_max},
                 {"eps", c.eps}}},
               {"I_1d_sign_changes", report_json(sign_changes_from_samples(xs, is, 0.0))}};
  a.table = std::move(t);
  a.plot = Series{"I(xi), g = " + c.g, "xi", "I(xi)", xs, is};
  a.formulas = {kHalfWave, "I(xi) = 2 int_0^1 g(xi y) y / sqrt(1 - y^2) dy", kMoment};
  return a;
}

Artifact figure1() {
  Table t{{"xi", "quadrature", "leading_term", "degenerate"}, {}};
  std::vector<double> xs, q;
  int agree = 0;
  const int m = 400;
  for (int i = 0; i < m; ++i) {
    const double xi = 20.0 + 100.0 * i / (m - 1);
    const PhaseExampleSample s = sine_cubed_phase_example(xi);
    t.rows.push_back({xi, s.quadrature, s.leading, s.degenerate ? 1.0 : 0.0});
    xs.push_back(xi);
    q.push_back(s.quadrature);
    if ((s.quadrature > 0) == (s.leading > 0)) ++agree;
  }
  std::vector<double> lead;
  for (const auto& row : t.rows) lead.push_back(row[2]);
  Artifact a;
  a.results = {{"sign_agreement_fraction", static_cast<double>(agree) / m},
               {"quadrature_sign_changes", sign_changes_from_samples(xs, q, 0.0).count},
               {"leading_term_sign_changes", sign_changes_from_samples(xs, lead, 0.0).count}};
  a.recipe = {{"g", "sin^3"}, {"phase", "1 - x^2/2"}, {"weight", "1"}, {"xi", {20.0, 120.0}}, {"points", m}};
  a.table = std::move(t);
  a.plot = Series{"int_0^1 sin h(xi phi(x)) dx, g = sin^3", "xi", "integral", xs, q};
  a.formulas = {"h(u) = asin(g(u)), phi(x) = 1 - x^2/2",
                "leading term sqrt(pi / (2 xi |h'(xi) phi''(0)|)) sin(h(xi) - delta pi/4), delta = sign h'(xi)"};
  return a;
}

Artifact example_figure(const RunConfig& c, const std::string& g_name) {
  ProblemSpec spec = one_dim_problem(general_from_catalog(g_name), g_name, forcing_from_catalog("sin3x"), "sin3x");
  spec.mesh_size = c.mesh;
  spec.newton_tol = c.tol;
  Artifact a = curve_artifact(spec, 0.5, 80.0, 0.5, "mu1(xi1), g = " + g_name + ", e = sin 3x");
  a.recipe = {{"g", g_name}, {"e", "sin3x"}, {"xi1", {0.5, 80.0}}, {"step", 0.5}, {"mesh", c.mesh}};
  a.formulas = {kBvp1d, kProjectionIdentity};
  return a;
}

Artifact constants() {
  const EigenPair e4 = eigenpair(4), e5 = eigenpair(5), e6 = eigenpair(6);
  const auto r4 = reduced_integrands(e4), r5 = reduced_integrands(e5), r6 = reduced_integrands(e6);
  Artifact a;
  a.results = {{"n6_f3_at_1", r6.f3.at_one()},
               {"n6_f3_at_0", r6.f3.at_zero()},
               {"n6_f3_at_0_closed_form", -1728.0 / std::pow(e6.lambda1, 3)},
               {"n5_f2_prime_at_0", r5.f2.derivative_at_zero()},
               {"n5_f2_prime_at_0_closed_form", 75.0 / (e5.lambda1 * e5.lambda1)},
               {"n4_phi1_pp0", e4.phi1_pp0},
               {"n4_f2_at_0", r4.f2.at_zero()},
               {"n4_f2_at_1", r4.f2.at_one()},
               {"n3_lambda1", eigenpair(3).lambda1}};
  a.formulas = {kEigen, kReduced};
  return a;
}

Artifact repro_command(const RunConfig& c) {
  switch (c.figure) {
    case 0: return constants();
    case 1: return figure1();
    case 2: return example_figure(c, "sinsqrt");
    case 3: return example_figure(c, "sinquart");
    default: throw DomainError("repro: --figure must be 1, 2 or 3");
  }
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"eigen", "integral", "ibp", "asym", "classify", "curve", "oned", "repro"};
  return names;
}

void validate(const RunConfig& c) {
  const auto& names = command_names();
  if (std::find(names.begin(), names.end(), c.command) == names.end()) {
    throw DomainError("unknown command '" + c.command + "'");
  }
  if (!(c.xi_min < c.xi_max)) throw DomainError("--xi-min must be below --xi-max");
  if (!(c.xi1_min < c.xi1_max)) throw DomainError("--xi1-min must be below --xi1-max");
  if (c.samples < 2) throw DomainError("--samples must be at least 2");
  if (!(c.step > 0.0)) throw DomainError("--step must be positive");
  if (c.mesh < 8) throw DomainError("--mesh must be at least 8");
  if (!(c.tol > 0.0)) throw DomainError("--tol must be positive");
  if (c.xi_min < 0.0 && c.command != "curve") throw DomainError("--xi-min must be non-negative");
  const std::vector<std::string> formats{"csv", "json", "svg", "all"};
  if (std::find(formats.begin(), formats.end(), c.format) == formats.end()) {
    throw DomainError("--format must be csv, json, svg or all");
  }
  // Resolve names now so a typo fails before any computation.
  periodic_from_catalog(c.g);
  forcing_from_catalog(c.e);
}

Artifact run_command(const RunConfig& c) {
  validate(c);
  static const std::map<std::string, std::function<Artifact(const RunConfig&)>> table{
      {"eigen", eigen_command}, {"integral", integral_command}, {"ibp", ibp_command},
      {"asym", asym_command},   {"classify", classify_command}, {"curve", curve_command},
      {"oned", oned_command},   {"repro", repro_command}};
  return table.at(c.command)(c);
}

json config_json(const RunConfig& c) {
  return {{"dim", c.dim},
          {"g", c.g},
          {"e", c.e},
          {"mode", c.mode},
          {"xi_min", c.xi_min},
          {"xi_max", c.xi_max},
          {"samples", c.samples},
          {"xi1_min", c.xi1_min},
          {"xi1_max", c.xi1_max},
          {"step", c.step},
          {"mesh", c.mesh},
          {"newton_tol", c.tol},
          {"parts", c.parts},
          {"eps", c.eps},
          {"u_max", c.u_max},
          {"figure", c.figure},
          {"endpoints", c.endpoints},
          {"format", c.format},
          {"quadrature_tolerance", "max(1e-12, 1e-10/xi)"}};
}

}  // namespace resonance::cli
