#include "resonance/oscillatory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "resonance/errors.hpp"
#include "resonance/quadrature.hpp"

namespace resonance {
namespace {

constexpr double kPi = std::numbers::pi;

void require_converged(const QuadratureResult& q, const char* what) {
  if (!q.converged) {
    std::ostringstream msg;
    msg << what << ": quadrature did not reach tolerance (achieved " << q.error << ")";
    throw AccuracyError(msg.str(), q.error);
  }
}

// Number of phase panels for argument xi: one oscillation of the highest
// harmonic of g per unit of `phase_range`.
int panel_count(const TrigPolynomial& g, double xi, double phase_range) {
  if (xi == 0.0 || g.degree() == 0) return 4;
  const double oscillations = xi * phase_range * g.degree() / g.period();
  return std::max(4, static_cast<int>(std::ceil(oscillations)));
}

bool negligible(double value, double scale) { return std::abs(value) <= 1e-12 * std::max(1.0, scale); }

}  // namespace

double quadrature_tolerance(double xi) { return std::max(1e-12, 1e-10 / std::max(std::abs(xi), 1.0)); }

RadialIntegral::RadialIntegral(int n) : RadialIntegral(resonance::eigenpair(n)) {}

RadialIntegral::RadialIntegral(EigenPair ep) : ep_(std::move(ep)), reduced_(reduced_integrands(ep_)) {}

std::vector<double> RadialIntegral::phase_breakpoints(double phase_step) const {
  if (!(phase_step > 0.0)) throw DomainError("phase_breakpoints: step must be positive");
  const int m = std::max(1, static_cast<int>(std::ceil(1.0 / phase_step)));
  std::vector<double> r(m + 1);
  r[0] = 0.0;
  r[m] = 1.0;
  for (int j = 1; j < m; ++j) r[j] = ep_.inverse_phi1(1.0 - static_cast<double>(j) / m);
  return r;
}

double RadialIntegral::direct(const TrigPolynomial& g, double xi) const {
  if (!(xi >= 0.0)) throw DomainError("K_direct: xi must be >= 0");
  if (g.is_zero()) return 0.0;
  const int m = panel_count(g, xi, 1.0);
  const auto breaks = phase_breakpoints(1.0 / m);
  const int power = ep_.n - 1;
  auto integrand = [&](double r) {
    const double p = ep_.phi1(r);
    return g(xi * p) * p * std::pow(r, power);
  };
  const QuadratureResult q = integrate_panels(integrand, breaks, quadrature_tolerance(xi));
  require_converged(q, "K_direct");
  return q.value;
}

bool RadialIntegral::parts_admissible(int parts) const {
  if (parts < 1 || parts > 3) return false;
  return reduced_.level(parts).smooth();
}

double RadialIntegral::by_parts(const AntiderivativeChain& chain, double xi, int parts) const {
  if (parts < 1 || parts > 3) throw DomainError("K_ibp: parts must lie in 1..3");
  if (!(xi > 0.0)) throw DomainError("K_ibp: xi must be > 0");
  if (!parts_admissible(parts)) {
    throw DomainError("K_ibp: f" + std::to_string(parts) + " is not smooth at r = 0 for n = " +
                      std::to_string(ep_.n));
  }
  // Boundary terms [f_k g_k(xi phi1)]_0^1 with phi1(0) = 1, phi1(1) = 0.
  double total = 0.0;
  double scale = 1.0;
  for (int k = 1; k <= parts; ++k) {
    scale /= xi;
    const ReducedIntegrand& f = reduced_.level(k);
    const TrigPolynomial& gk = chain.level(k);
    const double bracket = f.at_one() * gk(0.0) - f.at_zero() * gk(xi);
    total += (k % 2 == 1 ? 1.0 : -1.0) * scale * bracket;
  }
  const TrigPolynomial& gk = chain.level(parts);
  const int m = panel_count(chain.g, xi, 1.0);
  const auto breaks = phase_breakpoints(1.0 / m);
  auto integrand = [&](double r) {
    const double df = reduced_.evaluate(r).df[parts - 1];
    return df * gk(xi * ep_.phi1(r));
  };
  const QuadratureResult q = integrate_panels(integrand, breaks, quadrature_tolerance(xi) / scale);
  require_converged(q, "K_ibp");
  total += (parts % 2 == 1 ? -1.0 : 1.0) * scale * q.value;
  return total;
}

double RadialIntegral::asymptotic(const AntiderivativeChain& chain, double xi, bool include_endpoint_correction) const {
  if (!(xi > 0.0)) throw DomainError("dimension_asymptotic: xi must be > 0");
  const int n = ep_.n;
  const double xi2 = xi * xi, xi3 = xi2 * xi;
  const auto& f = reduced_;
  const double g2_0 = chain.g2_at_0, g3_0 = chain.g3_at_0;

  // Oscillating stationary-phase term G/xi^p * int f' sin h(xi phi1) with
  // g_level = G sin h.
  auto phase_term = [&](const TrigPolynomial& level, double f0) {
    const double sup = level.grid_sup();
    if (sup == 0.0 || f0 == 0.0) return 0.0;
    const HTransform h(level, sup);
    return sup * generalized_phase_leading(f0, h(xi), h.derivative(xi), ep_.phi1_pp0, xi).value;
  };

  double value = 0.0;
  if (n == 1) {
    value = phase_term(chain.g, 1.0);
  } else if (n == 2) {
    value = 2.0 / (ep_.nu1 * ep_.nu1 * xi) * chain.g1(xi);
  } else if (n == 3) {
    value = -phase_term(chain.g1, f.f1.derivative_at_zero()) / xi;
  } else if (n == 4) {
    value = (-f.f2.at_one() * g2_0 + f.f2.at_zero() * chain.g2(xi)) / xi2;
  } else if (n == 5) {
    value = -f.f2.at_one() * g2_0 / xi2;
    if (negligible(g2_0, chain.g2.grid_sup())) value += phase_term(chain.g2, f.f2.derivative_at_zero()) / xi2;
  } else {
    value = -f.f2.at_one() * g2_0 / xi2 + (f.f3.at_one() * g3_0 - f.f3.at_zero() * chain.g3(xi)) / xi3;
  }

  if (include_endpoint_correction) {
    // r = 1 boundary terms of the remaining integrations by parts; f_k is
    // smooth near r = 1 in every dimension.
    if (n == 2 || n == 3) value += -f.f2.at_one() * g2_0 / xi2;
    if (n >= 2 && n <= 5) value += f.f3.at_one() * g3_0 / xi3;
  }
  return value;
}

double k_direct(int n, const TrigPolynomial& g, double xi) { return RadialIntegral(n).direct(g, xi); }

double k_ibp(int n, const AntiderivativeChain& chain, double xi, int parts) {
  return RadialIntegral(n).by_parts(chain, xi, parts);
}

double dimension_asymptotic(int n, const AntiderivativeChain& chain, double xi) {
  return RadialIntegral(n).asymptotic(chain, xi);
}

std::complex<double> stationary_phase_leading(double f0, double phi0, double phi_pp0, double xi) {
  if (!(phi_pp0 < 0.0)) throw DomainError("stationary_phase_leading: phi''(0) must be negative");
  if (!(xi > 0.0)) throw DomainError("stationary_phase_leading: xi must be positive");
  const double amplitude = std::sqrt(kPi / (2.0 * xi * std::abs(phi_pp0))) * f0;
  return std::polar(1.0, xi * phi0 - kPi / 4.0) * amplitude;
}

PhaseLeading generalized_phase_leading(double f0, double h_at, double h_prime_at, double phi_pp0, double xi) {
  if (!(phi_pp0 < 0.0)) throw DomainError("generalized_phase_leading: phi''(0) must be negative");
  if (!(xi > 0.0)) throw DomainError("generalized_phase_leading: xi must be positive");
  PhaseLeading out;
  if (h_prime_at == 0.0) {
    out.degenerate = true;
    return out;
  }
  out.delta = h_prime_at > 0.0 ? 1 : -1;
  out.value = std::sqrt(kPi / (2.0 * xi * std::abs(h_prime_at * phi_pp0))) * f0 *
              std::sin(h_at - out.delta * kPi / 4.0);
  return out;
}

PhaseFunction quadratic_phase() {
  PhaseFunction p;
  p.phi = [](double x) { return 1.0 - 0.5 * x * x; };
  p.dphi = [](double x) { return -x; };
  p.inverse = [](double y) { return std::sqrt(std::max(0.0, 2.0 * (1.0 - y))); };
  p.phi0 = 1.0;
  p.phi_pp0 = -1.0;
  p.phi_at_one = 0.5;
  return p;
}

double phase_sine_integral(const std::function<double(double)>& f, const PhaseFunction& phase, const HTransform& h,
                           double xi, double phase_step) {
  if (!(xi >= 0.0)) throw DomainError("phase_sine_integral: xi must be >= 0");
  const double range = phase.phi0 - phase.phi_at_one;
  const int m = xi == 0.0 ? 4 : std::max(4, static_cast<int>(std::ceil(range * xi / phase_step)));
  std::vector<double> breaks(m + 1);
  breaks[0] = 0.0;
  breaks[m] = 1.0;
  for (int j = 1; j < m; ++j) breaks[j] = std::min(1.0, phase.inverse(phase.phi0 - range * j / m));
  auto integrand = [&](double x) { return f(x) * std::sin(h(xi * phase.phi(x))); };
  const QuadratureResult q = integrate_panels(integrand, breaks, quadrature_tolerance(xi));
  require_converged(q, "phase_sine_integral");
  return q.value;
}

PhaseExampleSample sine_cubed_phase_example(double xi) {
  static const TrigPolynomial g({}, {0.75, 0.0, -0.25});
  static const HTransform h(g, 1.0);
  static const PhaseFunction phase = quadratic_phase();
  PhaseExampleSample s;
  s.xi = xi;
  s.quadrature = phase_sine_integral([](double) { return 1.0; }, phase, h, xi, 2.0 * kPi / 3.0);
  const PhaseLeading lead = generalized_phase_leading(1.0, h(xi), h.derivative(xi), phase.phi_pp0, xi);
  s.leading = lead.value;
  s.degenerate = lead.degenerate;
  return s;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Infinite: return "Infinite";
    case Verdict::Finite: return "Finite";
    default: return "Undetermined";
  }
}

namespace {

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

void set_data_verdict(OscillationReport& rep, double lo, double hi) {
  rep.count = static_cast<int>(rep.sign_changes.size());
  std::ostringstream basis;
  if (rep.count == 0) {
    rep.verdict = Verdict::Finite;
    basis << "no sign change observed on [" << lo << ", " << hi << "]";
  } else {
    rep.verdict = Verdict::Undetermined;
    basis << rep.count << " sign changes observed on [" << lo << ", " << hi
          << "]; infinitude is not decidable from a finite window";
  }
  rep.verdict_basis = basis.str();
}

}  // namespace

OscillationReport sign_changes(const std::function<double(double)>& sampler, double lo, double hi, int base_points,
                               const NoiseFloor& atol) {
  if (!(lo < hi)) throw DomainError("sign_changes: window must satisfy lo < hi");
  if (base_points < 64) throw DomainError("sign_changes: need at least 64 base points");
  OscillationReport rep;
  rep.xi_grid.resize(base_points);
  rep.values.resize(base_points);
  for (int i = 0; i < base_points; ++i) {
    rep.xi_grid[i] = i + 1 == base_points ? hi : lo + (hi - lo) * i / (base_points - 1);
    rep.values[i] = sampler(rep.xi_grid[i]);
  }
  int last = -1;
  for (int i = 0; i < base_points; ++i) {
    if (sign_of(rep.values[i]) == 0) continue;
    if (last >= 0 && sign_of(rep.values[i]) != sign_of(rep.values[last])) {
      double a = rep.xi_grid[last], b = rep.xi_grid[i];
      const double ya = rep.values[last], yb = rep.values[i];
      if (std::abs(ya) < atol(a) && std::abs(yb) < atol(b)) {
        last = i;
        continue;
      }
      const int sa = sign_of(ya);
      while (b - a > 1e-4) {
        const double m = 0.5 * (a + b);
        if (sign_of(sampler(m)) == sa) a = m;
        else b = m;
      }
      rep.sign_changes.emplace_back(a, b);
    }
    last = i;
  }
  set_data_verdict(rep, lo, hi);
  return rep;
}

OscillationReport sign_changes(const std::function<double(double)>& sampler, double lo, double hi, int base_points,
                               double atol) {
  return sign_changes(sampler, lo, hi, base_points, [atol](double) { return atol; });
}

NoiseFloor default_noise_floor() {
  return [](double xi) { return 10.0 * quadrature_tolerance(xi); };
}

OscillationReport sign_changes_from_samples(const std::vector<double>& xs, const std::vector<double>& ys,
                                            double atol) {
  if (xs.size() != ys.size()) throw DomainError("sign_changes_from_samples: size mismatch");
  OscillationReport rep;
  rep.xi_grid = xs;
  rep.values = ys;
  int last = -1;
  for (int i = 0; i < static_cast<int>(ys.size()); ++i) {
    if (sign_of(ys[i]) == 0) continue;
    if (last >= 0 && sign_of(ys[i]) != sign_of(ys[last]) &&
        !(std::abs(ys[i]) < atol && std::abs(ys[last]) < atol)) {
      rep.sign_changes.emplace_back(xs[last], xs[i]);
    }
    last = i;
  }
  if (xs.empty()) {
    rep.verdict = Verdict::Finite;
    rep.verdict_basis = "no samples";
    return rep;
  }
  set_data_verdict(rep, xs.front(), xs.back());
  return rep;
}

namespace {

// F(xi) = offset + p(xi), p ranging over [pmin, pmax]: F changes sign
// infinitely often iff 0 lies strictly inside [offset+pmin, offset+pmax].
VerdictRecord amplitude_verdict(double offset, double pmin, double pmax, const std::string& what) {
  VerdictRecord v;
  v.offset = offset;
  v.amplitude_min = pmin;
  v.amplitude_max = pmax;
  const double scale = std::max({std::abs(offset), std::abs(pmin), std::abs(pmax)});
  const double lo = offset + pmin, hi = offset + pmax;
  std::ostringstream basis;
  basis << what << ": offset " << offset << ", oscillating part in [" << pmin << ", " << pmax << "]";
  if (scale == 0.0 || std::abs(lo) <= 1e-9 * scale || std::abs(hi) <= 1e-9 * scale) {
    v.verdict = Verdict::Undetermined;
    basis << "; offset equals the amplitude bound, no rule applies";
  } else if (lo < 0.0 && hi > 0.0) {
    v.verdict = Verdict::Infinite;
    basis << "; amplitude exceeds offset, so the periodic boundary term changes sign infinitely often";
  } else {
    v.verdict = Verdict::Finite;
    basis << "; offset exceeds amplitude, so the leading term keeps one sign";
  }
  v.basis = basis.str();
  return v;
}

}  // namespace

VerdictRecord classify_oscillation(const RadialIntegral& ctx, const AntiderivativeChain& chain) {
  const int n = ctx.dimension();
  const auto& f = ctx.reduced();
  const bool g2_zero = negligible(chain.g2_at_0, chain.g2.grid_sup());
  const bool g3_zero = negligible(chain.g3_at_0, chain.g3.grid_sup());
  VerdictRecord v;
  if (n <= 3) {
    v.verdict = Verdict::Infinite;
    v.basis = "n <= 3: the leading term is a periodic function of xi of mean zero";
    return v;
  }
  if (n == 4) {
    const double offset = -f.f2.at_one() * chain.g2_at_0;
    const double b = f.f2.at_zero();
    const double p1 = b * chain.g2.grid_min(), p2 = b * chain.g2.grid_max();
    return amplitude_verdict(offset, std::min(p1, p2), std::max(p1, p2),
                             "n = 4, leading term -f2(1) g2(0) + f2(0) g2(xi)");
  }
  if (n == 5) {
    v.verdict = g2_zero ? Verdict::Infinite : Verdict::Finite;
    v.offset = -f.f2.at_one() * chain.g2_at_0;
    v.basis = g2_zero ? "n = 5 and g2(0) = 0: the xi^(-5/2) stationary-phase term oscillates with mean zero"
                      : "n = 5 and g2(0) != 0: the constant-sign xi^(-2) boundary term dominates";
    return v;
  }
  if (!g2_zero) {
    v.verdict = Verdict::Finite;
    v.offset = -f.f2.at_one() * chain.g2_at_0;
    v.basis = "n >= 6 and g2(0) != 0: the constant-sign xi^(-2) boundary term dominates";
    return v;
  }
  if (n == 6) {
    const double offset = f.f3.at_one() * chain.g3_at_0;
    const double b = -f.f3.at_zero();
    const double p1 = b * chain.g3.grid_min(), p2 = b * chain.g3.grid_max();
    return amplitude_verdict(offset, std::min(p1, p2), std::max(p1, p2),
                             "n = 6 and g2(0) = 0, leading term f3(1) g3(0) - f3(0) g3(xi)");
  }
  if (!g3_zero) {
    v.verdict = Verdict::Finite;
    v.offset = f.f3.at_one() * chain.g3_at_0;
    v.basis = "n >= 7, g2(0) = 0, g3(0) != 0: the constant xi^(-3) boundary term dominates";
    return v;
  }
  v.verdict = Verdict::Undetermined;
  v.basis = "n >= 7 with g2(0) = g3(0) = 0: more than three integrations by parts would be needed";
  return v;
}

VerdictRecord classify_oscillation(int n, const AntiderivativeChain& chain) {
  return classify_oscillation(RadialIntegral(n), chain);
}

double weighted_periodic_integral(const TrigPolynomial& g, const EndpointWeight& f, double xi) {
  if (!(xi >= 0.0)) throw DomainError("weighted_periodic_integral: xi must be >= 0");
  const int m = panel_count(g, xi, 1.0);
  const double h = 1.0 / m;
  const double tol = quadrature_tolerance(xi);
  // End panels use x = h s^2 and 1 - x = h s^2 so that inverse square root
  // singularities at 0 and 1 become smooth.
  std::vector<double> breaks(m - 1);
  for (int j = 1; j < m; ++j) breaks[j - 1] = j * h;
  QuadratureResult total = integrate(
      [&](double s) {
        const double x = h * s * s;
        return g(xi * x) * f(x, 1.0 - x) * 2.0 * h * s;
      },
      0.0, 1.0, tol / m);
  total += integrate_panels([&](double x) { return g(xi * x) * f(x, 1.0 - x); }, breaks, tol * (m - 2) / m);
  total += integrate(
      [&](double s) {
        const double t = h * s * s;
        return g(xi * (1.0 - t)) * f(1.0 - t, t) * 2.0 * h * s;
      },
      0.0, 1.0, tol / m);
  require_converged(total, "weighted_periodic_integral");
  return total.value;
}

double weighted_periodic_integral(const TrigPolynomial& g, const std::function<double(double)>& f, double xi) {
  return weighted_periodic_integral(g, EndpointWeight([&f](double x, double) { return f(x); }), xi);
}

EndpointWeight inverse_phase_weight(const EigenPair& ep) {
  return [ep](double x, double one_minus_x) {
    const double r = one_minus_x < 0.5 ? ep.inverse_phi1_complement(one_minus_x) : ep.inverse_phi1(x);
    return 1.0 / ep.derivs(r, 1)[1];
  };
}

DecayRecord riemann_lebesgue_decay(const TrigPolynomial& g, const std::function<double(double)>& f,
                                   const std::vector<double>& xi_list) {
  return riemann_lebesgue_decay(g, EndpointWeight([&f](double x, double) { return f(x); }), xi_list);
}

DecayRecord riemann_lebesgue_decay(const TrigPolynomial& g, const EndpointWeight& f,
                                   const std::vector<double>& xi_list) {
  DecayRecord rec;
  rec.xi = xi_list;
  for (double xi : xi_list) {
    rec.values.push_back(weighted_periodic_integral(g, f, xi));
    double env = 0.0;
    for (int j = 0; j <= 16; ++j) {
      env = std::max(env, std::abs(weighted_periodic_integral(g, f, xi + g.period() * j / 16.0)));
    }
    rec.envelope.push_back(env);
  }
  for (std::size_t k = 1; k < rec.envelope.size(); ++k) {
    if (rec.envelope[k] > rec.envelope[k - 1] * (1.0 + 1e-9)) rec.violation = true;
  }
  // Least-squares slope of log envelope against log xi.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (std::size_t k = 0; k < rec.xi.size(); ++k) {
    if (rec.xi[k] <= 0.0 || rec.envelope[k] <= 0.0) continue;
    const double x = std::log(rec.xi[k]), y = std::log(rec.envelope[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  if (cnt >= 2) rec.slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  return rec;
}

}  // namespace resonance
