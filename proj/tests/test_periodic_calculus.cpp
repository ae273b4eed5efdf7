#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "resonance/errors.hpp"
#include "resonance/periodic_calculus.hpp"

using namespace resonance;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::string> periodic_catalog() {
  std::vector<std::string> out;
  for (const auto& name : catalog_names()) {
    if (is_periodic_name(name) && name != "zero") out.push_back(name);
  }
  out.push_back("a1:0.5,b2:-1.5,a3:0.25");
  return out;
}

TEST(TrigPolynomial, CatalogClosedForms) {
  const TrigPolynomial s3 = *periodic_from_catalog("sin3");
  const TrigPolynomial mix = *periodic_from_catalog("sin-27sin3");
  for (double u : {-2.0, 0.3, 1.7, 5.0}) {
    EXPECT_NEAR(s3(u), std::pow(std::sin(u), 3), 1e-15);
    EXPECT_NEAR(mix(u), std::sin(u) - 27 * std::sin(3 * u), 1e-13);
    EXPECT_NEAR(periodic_from_catalog("cos")->operator()(u), std::cos(u), 1e-15);
  }
  EXPECT_TRUE(periodic_from_catalog("zero")->is_zero());
}

TEST(TrigPolynomial, InlineListParses) {
  const TrigPolynomial g = *periodic_from_catalog("a1:0.5,b3:2");
  for (double u : {0.1, 2.2}) EXPECT_NEAR(g(u), 0.5 * std::cos(u) + 2 * std::sin(3 * u), 1e-14);
  EXPECT_THROW(general_from_catalog("a0:1"), DomainError);
  EXPECT_THROW(general_from_catalog("nonsense"), DomainError);
  EXPECT_FALSE(periodic_from_catalog("sinsqrt").has_value());
}

TEST(TrigPolynomial, Periodicity) {
  for (const auto& name : periodic_catalog()) {
    const TrigPolynomial g = *periodic_from_catalog(name);
    for (double u = -7.0; u < 7.0; u += 0.37) EXPECT_NEAR(g(u), g(u + g.period()), 1e-12) << name;
  }
  const TrigPolynomial p({0.0, 1.0}, {1.0}, 3.0);
  for (double u : {0.2, 1.9}) EXPECT_NEAR(p(u), p(u + 3.0), 1e-12);
}

TEST(TrigPolynomial, CoefficientBoundDominatesGridSup) {
  for (const auto& name : periodic_catalog()) {
    const TrigPolynomial g = *periodic_from_catalog(name);
    for (int order = 0; order <= 2; ++order) {
      EXPECT_GE(g.coefficient_bound(order) * (1 + 1e-12), g.grid_sup(order)) << name;
    }
  }
}

TEST(AntiderivativeChain, DifferencesRecoverEachLevel) {
  const double h = 1e-5;
  for (const auto& name : periodic_catalog()) {
    const AntiderivativeChain c = antiderivative_chain(*periodic_from_catalog(name));
    for (int i = 0; i < 512; ++i) {
      const double u = c.g.period() * i / 512.0;
      for (int k = 1; k <= 3; ++k) {
        const TrigPolynomial& up = c.level(k);
        const double fd = (up(u + h) - up(u - h)) / (2 * h);
        EXPECT_NEAR(fd, c.level(k - 1)(u), 1e-6) << name << " level " << k;
      }
    }
  }
}

TEST(AntiderivativeChain, LevelsHaveMeanZero) {
  for (const auto& name : periodic_catalog()) {
    const AntiderivativeChain c = antiderivative_chain(*periodic_from_catalog(name));
    for (int k = 0; k <= 3; ++k) {
      // Trapezoid on a full period is exact for trigonometric polynomials of low degree.
      const int m = 1024;
      double s = 0.0;
      for (int i = 0; i < m; ++i) s += c.level(k)(c.g.period() * i / m);
      EXPECT_LT(std::abs(s * c.g.period() / m), 1e-10) << name << " level " << k;
    }
  }
}

TEST(AntiderivativeChain, OddNonlinearitiesHaveZeroSecondConstant) {
  for (const char* name : {"sin", "sin3", "sin-27sin3", "b1:1,b4:-2"}) {
    const AntiderivativeChain c = antiderivative_chain(*periodic_from_catalog(name));
    EXPECT_EQ(c.g2_at_0, 0.0) << name;
  }
}

TEST(AntiderivativeChain, Constants) {
  // g = sin: g1 = -cos, g2 = -sin, g3 = cos.
  const AntiderivativeChain s = antiderivative_chain(*periodic_from_catalog("sin"));
  EXPECT_NEAR(s.g3_at_0, 1.0, 1e-15);
  EXPECT_NEAR(s.sup_g1, 1.0, 1e-6);
  EXPECT_NEAR(s.sup_gprime, 1.0, 1e-6);
  // g = cos: g2 = -cos, so g2(0) = -1.
  const AntiderivativeChain c = antiderivative_chain(*periodic_from_catalog("cos"));
  EXPECT_NEAR(c.g2_at_0, -1.0, 1e-15);
  EXPECT_NEAR(c.g3_at_0, 0.0, 1e-15);
  const ClassifierConstants k = classifier_constants(c);
  EXPECT_EQ(k.g2_at_0, c.g2_at_0);
  EXPECT_EQ(k.sup_g1, c.sup_g1);
}

TEST(Projection, RecoversTrigPolynomialAndReportsMean) {
  const ProjectionResult p = project_periodic([](double u) { return 2.0 + std::pow(std::sin(u), 3); }, 2 * kPi);
  EXPECT_NEAR(p.discarded_mean, 2.0, 1e-13);
  const TrigPolynomial ref = *periodic_from_catalog("sin3");
  for (double u : {0.0, 0.4, 2.5}) EXPECT_NEAR(p.poly(u), ref(u), 1e-13);

  // A smooth non-polynomial periodic function converges geometrically.
  const ProjectionResult q = project_periodic([](double u) { return std::exp(std::sin(u)); }, 2 * kPi);
  EXPECT_NEAR(q.discarded_mean, std::cyl_bessel_i(0.0, 1.0), 1e-13);
  for (double u : {0.1, 3.0}) EXPECT_NEAR(q.poly(u) + q.discarded_mean, std::exp(std::sin(u)), 1e-12);
}

TEST(HTransform, ArcsineOfLevel) {
  const TrigPolynomial s3 = *periodic_from_catalog("sin3");
  const HTransform h = h_transform(s3, 1.0);
  for (double u : {0.2, 1.0, 2.7}) {
    EXPECT_NEAR(h(u), std::asin(std::pow(std::sin(u), 3)), 1e-14);
    const double fd = (h(u + 1e-6) - h(u - 1e-6)) / 2e-6;
    EXPECT_NEAR(h.derivative(u), fd, 1e-6);
  }
  // At u = pi/2, h' = 3 sin^2 cos / sqrt(1 - sin^6) tends to sqrt(3) from the left.
  EXPECT_NEAR(h.derivative(kPi / 2), std::sqrt(3.0), 1e-6);
  EXPECT_THROW(h_transform(s3, 0.5), DomainError);
}

TEST(GeneralNonlinearity, DerivativeMatchesDifferences) {
  for (const char* name : {"sinsqrt", "sinquart", "sin", "identity"}) {
    const GeneralNonlinearity g = general_from_catalog(name);
    for (double u = -3.5; u < 40.0; u += 0.61) {
      if (u <= g.domain_lower + 0.1) continue;
      const double fd = (g(u + 1e-6) - g(u - 1e-6)) / 2e-6;
      EXPECT_NEAR(g.derivative(u), fd, 1e-5) << name << " u=" << u;
    }
  }
  const GeneralNonlinearity s = general_from_catalog("sinsqrt");
  EXPECT_NEAR(s(5.0), std::sin(5.0) / 3.0, 1e-15);
  EXPECT_FALSE(s.periodic);
  EXPECT_TRUE(general_from_catalog("sin").periodic);
}

}  // namespace
