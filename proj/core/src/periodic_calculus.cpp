#include "resonance/periodic_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "resonance/errors.hpp"

namespace resonance {

TrigPolynomial::TrigPolynomial(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs,
                               double period)
    : a_(std::move(cos_coeffs)), b_(std::move(sin_coeffs)), period_(period) {
  if (!(period > 0.0) || !std::isfinite(period)) throw DomainError("TrigPolynomial: period must be positive");
  const std::size_t k = std::max(a_.size(), b_.size());
  if (k > static_cast<std::size_t>(kMaxDegree)) throw DomainError("TrigPolynomial: degree exceeds 64");
  a_.resize(k, 0.0);
  b_.resize(k, 0.0);
  while (!a_.empty() && a_.back() == 0.0 && b_.back() == 0.0) {
    a_.pop_back();
    b_.pop_back();
  }
  omega_ = 2.0 * std::numbers::pi / period_;
}

bool TrigPolynomial::is_zero() const { return a_.empty(); }

double TrigPolynomial::operator()(double u) const { return derivative(u, 0); }

double TrigPolynomial::derivative(double u, int order) const {
  if (order < 0) throw DomainError("TrigPolynomial::derivative: negative order");
  double sum = 0.0;
  for (int k = 1; k <= degree(); ++k) {
    const double a = a_[k - 1], b = b_[k - 1];
    if (a == 0.0 && b == 0.0) continue;
    const double w = k * omega_;
    const double c = std::cos(w * u), s = std::sin(w * u);
    double term = 0.0;
    switch (order % 4) {
      case 0: term = a * c + b * s; break;
      case 1: term = -a * s + b * c; break;
      case 2: term = -(a * c + b * s); break;
      default: term = a * s - b * c; break;
    }
    sum += std::pow(w, order) * term;
  }
  return sum;
}

TrigPolynomial TrigPolynomial::differentiate() const {
  std::vector<double> a(a_.size()), b(b_.size());
  for (int k = 1; k <= degree(); ++k) {
    const double w = k * omega_;
    a[k - 1] = w * b_[k - 1];
    b[k - 1] = -w * a_[k - 1];
  }
  return TrigPolynomial(std::move(a), std::move(b), period_);
}

TrigPolynomial TrigPolynomial::antiderivative() const {
  std::vector<double> a(a_.size()), b(b_.size());
  for (int k = 1; k <= degree(); ++k) {
    const double w = k * omega_;
    a[k - 1] = -b_[k - 1] / w;
    b[k - 1] = a_[k - 1] / w;
  }
  return TrigPolynomial(std::move(a), std::move(b), period_);
}

double TrigPolynomial::coefficient_bound(int order) const {
  double sum = 0.0;
  for (int k = 1; k <= degree(); ++k) {
    sum += std::pow(k * omega_, order) * std::hypot(a_[k - 1], b_[k - 1]);
  }
  return sum;
}

double TrigPolynomial::grid_sup(int order, int samples) const {
  return std::max(std::abs(grid_max(order, samples)), std::abs(grid_min(order, samples)));
}

double TrigPolynomial::grid_max(int order, int samples) const {
  double m = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < samples; ++j) m = std::max(m, derivative(period_ * j / samples, order));
  return m;
}

double TrigPolynomial::grid_min(int order, int samples) const {
  double m = std::numeric_limits<double>::infinity();
  for (int j = 0; j < samples; ++j) m = std::min(m, derivative(period_ * j / samples, order));
  return m;
}

ProjectionResult project_periodic(const std::function<double(double)>& g, double period, int samples,
                                  int degree) {
  if (degree < 1 || degree > TrigPolynomial::kMaxDegree || 2 * degree >= samples) {
    throw DomainError("project_periodic: need 1 <= degree <= 64 and samples > 2*degree");
  }
  std::vector<double> values(samples);
  for (int j = 0; j < samples; ++j) values[j] = g(period * j / samples);
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= samples;
  std::vector<double> a(degree), b(degree);
  for (int k = 1; k <= degree; ++k) {
    double sa = 0.0, sb = 0.0;
    for (int j = 0; j < samples; ++j) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>((static_cast<long>(k) * j) % samples) / samples;
      sa += values[j] * std::cos(theta);
      sb += values[j] * std::sin(theta);
    }
    a[k - 1] = 2.0 * sa / samples;
    b[k - 1] = 2.0 * sb / samples;
  }
  return {TrigPolynomial(std::move(a), std::move(b), period), mean};
}

const TrigPolynomial& AntiderivativeChain::level(int k) const {
  switch (k) {
    case 0: return g;
    case 1: return g1;
    case 2: return g2;
    case 3: return g3;
    default: throw DomainError("AntiderivativeChain::level: level must lie in 0..3");
  }
}

AntiderivativeChain antiderivative_chain(const TrigPolynomial& g) {
  AntiderivativeChain c;
  c.g = g;
  c.g1 = g.antiderivative();
  c.g2 = c.g1.antiderivative();
  c.g3 = c.g2.antiderivative();
  c.g2_at_0 = c.g2(0.0);
  c.g3_at_0 = c.g3(0.0);
  c.sup_g1 = c.g1.grid_sup();
  c.sup_gprime = g.grid_sup(1);
  return c;
}

ClassifierConstants classifier_constants(const AntiderivativeChain& chain) {
  return {chain.g2_at_0, chain.g3_at_0, chain.sup_g1, chain.sup_gprime};
}

HTransform::HTransform(TrigPolynomial level, double normalization)
    : level_(std::move(level)), norm_(normalization) {
  const double sup = level_.grid_sup();
  if (!(normalization > 0.0) || normalization < sup * (1.0 - 1e-12)) {
    std::ostringstream msg;
    msg << "h_transform: normalization " << normalization << " is below sup|g| = " << sup;
    throw DomainError(msg.str());
  }
}

double HTransform::operator()(double u) const {
  return std::asin(std::clamp(level_(u) / norm_, -1.0, 1.0));
}

double HTransform::derivative(double u) const {
  const double g = level_(u);
  const double gap = norm_ - std::abs(g);
  if (gap > 4.0 * std::numeric_limits<double>::epsilon() * norm_) {
    return level_.derivative(u, 1) / std::sqrt(gap * (norm_ + std::abs(g)));
  }
  const double gpp = level_.derivative(u, 2);
  return std::copysign(std::sqrt(std::abs(gpp) / norm_), g);
}

HTransform h_transform(const TrigPolynomial& level, double normalization) {
  return HTransform(level, normalization);
}

GeneralNonlinearity as_general(const TrigPolynomial& g, std::string name) {
  GeneralNonlinearity out;
  out.name = std::move(name);
  out.value = [g](double u) { return g(u); };
  out.derivative = [g](double u) { return g.derivative(u, 1); };
  out.periodic = true;
  out.domain_note = "periodic trigonometric polynomial, defined on all reals";
  out.oscillation_scale = g.degree() > 0 ? g.period() / g.degree() : g.period();
  return out;
}

namespace {

const std::vector<std::string> kPeriodicNames = {"sin", "cos", "sin3", "sin-27sin3", "zero"};
const std::vector<std::string> kGeneralNames = {"sinsqrt", "sinquart", "identity"};

std::string catalog_listing() {
  std::string s = "known nonlinearities:";
  for (const auto& n : catalog_names()) s += " " + n;
  s += " (or inline coefficients such as a1:0.5,b3:-1, or linear:<slope>)";
  return s;
}

std::optional<TrigPolynomial> parse_inline(const std::string& text) {
  if (text.empty() || (text[0] != 'a' && text[0] != 'b')) return std::nullopt;
  std::vector<double> a, b;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    const auto colon = token.find(':');
    if (token.size() < 3 || colon == std::string::npos || (token[0] != 'a' && token[0] != 'b')) {
      return std::nullopt;
    }
    std::size_t used = 0, used_v = 0;
    int k = 0;
    double v = 0.0;
    try {
      k = std::stoi(token.substr(1, colon - 1), &used);
      v = std::stod(token.substr(colon + 1), &used_v);
    } catch (const std::exception&) {
      return std::nullopt;
    }
    if (used != colon - 1 || used_v != token.size() - colon - 1) return std::nullopt;
    if (k < 1 || k > TrigPolynomial::kMaxDegree) throw DomainError("inline coefficient index must lie in 1..64");
    auto& dst = token[0] == 'a' ? a : b;
    if (dst.size() < static_cast<std::size_t>(k)) dst.resize(k, 0.0);
    dst[k - 1] = v;
  }
  return TrigPolynomial(std::move(a), std::move(b));
}

}  // namespace

std::vector<std::string> catalog_names() {
  std::vector<std::string> names = kPeriodicNames;
  names.insert(names.end(), kGeneralNames.begin(), kGeneralNames.end());
  return names;
}

bool is_periodic_name(const std::string& name) {
  if (std::find(kPeriodicNames.begin(), kPeriodicNames.end(), name) != kPeriodicNames.end()) return true;
  return parse_inline(name).has_value();
}

std::optional<TrigPolynomial> periodic_from_catalog(const std::string& name) {
  if (name == "sin") return TrigPolynomial({}, {1.0});
  if (name == "cos") return TrigPolynomial({1.0}, {});
  if (name == "sin3") return TrigPolynomial({}, {0.75, 0.0, -0.25});
  if (name == "sin-27sin3") return TrigPolynomial({}, {1.0, 0.0, -27.0});
  if (name == "zero") return TrigPolynomial();
  if (auto p = parse_inline(name)) return p;
  if (std::find(kGeneralNames.begin(), kGeneralNames.end(), name) != kGeneralNames.end() ||
      name.rfind("linear:", 0) == 0) {
    return std::nullopt;
  }
  throw DomainError("unknown nonlinearity '" + name + "'; " + catalog_listing());
}

GeneralNonlinearity general_from_catalog(const std::string& name) {
  if (auto p = periodic_from_catalog(name)) return as_general(*p, name);
  GeneralNonlinearity g;
  g.name = name;
  if (name == "sinsqrt") {
    g.value = [](double u) {
      if (!(u > -4.0)) throw DomainError("sinsqrt: defined only for u > -4");
      return std::sin(u) / std::sqrt(u + 4.0);
    };
    g.derivative = [](double u) {
      if (!(u > -4.0)) throw DomainError("sinsqrt: defined only for u > -4");
      const double s = u + 4.0;
      return std::cos(u) / std::sqrt(s) - 0.5 * std::sin(u) / (s * std::sqrt(s));
    };
    g.domain_lower = -4.0;
    g.domain_note = "sin(u)/sqrt(u+4), defined for u > -4";
  } else if (name == "sinquart") {
    g.value = [](double u) { return std::sin(u) / std::sqrt(u * u * u * u + 4.0); };
    g.derivative = [](double u) {
      const double s = u * u * u * u + 4.0;
      return std::cos(u) / std::sqrt(s) - 2.0 * u * u * u * std::sin(u) / (s * std::sqrt(s));
    };
    g.domain_note = "sin(u)/sqrt(u^4+4), defined on all reals";
  } else if (name == "identity") {
    g.value = [](double u) { return u; };
    g.derivative = [](double) { return 1.0; };
    g.domain_note = "g(u) = u";
  } else {
    double slope = 0.0;
    try {
      std::size_t used = 0;
      slope = std::stod(name.substr(7), &used);
      if (used != name.size() - 7) throw DomainError("bad slope");
    } catch (const std::exception&) {
      throw DomainError("unknown nonlinearity '" + name + "'; " + catalog_listing());
    }
    g.value = [slope](double u) { return slope * u; };
    g.derivative = [slope](double) { return slope; };
    g.domain_note = "linear g(u) = c u";
  }
  return g;
}

}  // namespace resonance
