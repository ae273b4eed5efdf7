#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "oracle.hpp"
#include "resonance/errors.hpp"
#include "resonance/oscillatory.hpp"

using namespace resonance;

namespace {

constexpr double kPi = std::numbers::pi;

TrigPolynomial cat(const char* name) { return *periodic_from_catalog(name); }

// phi1 for dimension n from the Bessel oracle, normalized by phi1(0) = 1.
std::function<double(double)> oracle_phi(int n) {
  const double nu = 0.5 * (n - 2);
  const double root = oracle::first_root(nu);
  return [nu, root](double r) {
    if (r == 0.0) return 1.0;
    const long double z = root * r;
    return static_cast<double>(std::tgamma(nu + 1) * std::pow(2 / z, nu) * oracle::bessel_j(nu, z));
  };
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

TEST(ReducedIntegrand, ClosedFormEndpoints) {
  for (int n = 2; n <= 10; ++n) {
    const EigenPair ep = eigenpair(n);
    const ReducedIntegrandSet f = reduced_integrands(ep);
    // phi1'(1) = -Gamma(nu+1) 2^nu nu1^(1-nu) J_(nu+1)(nu1), from the Bessel oracle.
    const long double nu = 0.5L * (n - 2);
    const double dphi1 = static_cast<double>(-std::tgamma(nu + 1) * std::pow(2.0L, nu) *
                                             std::pow((long double)ep.nu1, 1 - nu) * oracle::bessel_j(nu + 1, ep.nu1));
    EXPECT_EQ(f.f1.at_one(), 0.0);
    EXPECT_NEAR(f.f2.at_one(), 1 / dphi1, 1e-9 * std::abs(1 / dphi1)) << n;
    EXPECT_NEAR(f.f3.at_one(), 4 * (n - 1) / (dphi1 * dphi1), 1e-9 * f.f3.at_one()) << n;
    // The evaluators approach the closed forms from inside.
    EXPECT_NEAR(f.f2(1 - 1e-12), f.f2.at_one(), 1e-8) << n;
    EXPECT_NEAR(f.f3(1 - 1e-12), f.f3.at_one(), 1e-8 * f.f3.at_one()) << n;
  }
}

TEST(ReducedIntegrand, OriginLimits) {
  const EigenPair two = eigenpair(2);
  EXPECT_NEAR(reduced_integrands(two).f1.at_zero(), -2 / two.lambda1, 1e-13);
  const EigenPair four = eigenpair(4);
  EXPECT_NEAR(reduced_integrands(four).f2.at_zero(), 2 / (four.phi1_pp0 * four.phi1_pp0), 1e-13);
  // Zero by cancellation in the series, so only to rounding.
  EXPECT_NEAR(reduced_integrands(four).f3.at_zero(), 0.0, 1e-14);
  for (int n = 7; n <= 10; ++n) EXPECT_EQ(reduced_integrands(n).f3.at_zero(), 0.0) << n;

  const EigenPair five = eigenpair(5);
  EXPECT_NEAR(reduced_integrands(five).f2.derivative_at_zero(), 75 / (five.lambda1 * five.lambda1), 1e-12);
  const EigenPair six = eigenpair(6);
  EXPECT_NEAR(reduced_integrands(six).f3.at_zero(), -1728 / std::pow(six.lambda1, 3), 1e-12);
  EXPECT_NEAR(reduced_integrands(six).f3.at_one(), 71.44, 0.05);

  // Singular origins are reported, not evaluated.
  EXPECT_FALSE(reduced_integrands(3).f2.smooth());
  EXPECT_THROW(reduced_integrands(3).f2.at_zero(), DomainError);
}

TEST(ReducedIntegrand, SeriesBranchJoinsClosedForm) {
  for (int n : {4, 6, 8}) {
    const ReducedIntegrandSet f = reduced_integrands(n);
    for (int level = 1; level <= 3; ++level) {
      const ReducedIntegrand& fl = f.level(level);
      if (!fl.smooth()) continue;
      const double below = fl(0.05 - 1e-9), above = fl(0.05 + 1e-9);
      EXPECT_NEAR(below, above, 1e-7 * std::max(1.0, std::abs(above))) << n << " level " << level;
    }
  }
}

TEST(ReducedIntegrand, LevelsAreSuccessiveQuotients) {
  // f2 = f1' / phi1', f3 = f2' / phi1', checked with central differences.
  for (int n : {3, 5, 6}) {
    const EigenPair ep = eigenpair(n);
    const ReducedIntegrandSet f = reduced_integrands(ep);
    for (double r : {0.2, 0.5, 0.8}) {
      const double h = 1e-5, dphi = ep.derivs(r, 1)[1];
      EXPECT_NEAR((f.f1(r + h) - f.f1(r - h)) / (2 * h) / dphi, f.f2(r), 1e-6 * std::max(1.0, std::abs(f.f2(r))));
      EXPECT_NEAR((f.f2(r + h) - f.f2(r - h)) / (2 * h) / dphi, f.f3(r), 1e-5 * std::max(1.0, std::abs(f.f3(r))));
    }
  }
}

TEST(RadialIntegral, DirectMatchesSimpsonOracle) {
  for (int n : {3, 6}) {
    const auto phi = oracle_phi(n);
    for (const char* gname : {"sin", "sin3"}) {
      const TrigPolynomial g = cat(gname);
      for (double xi : {5.0, 30.0}) {
        const double ref = oracle::simpson(
            [&](double r) { return g(xi * phi(r)) * phi(r) * std::pow(r, n - 1); }, 0.0, 1.0, 20000);
        EXPECT_NEAR(k_direct(n, g, xi), ref, 1e-10) << n << " " << gname << " xi=" << xi;
      }
    }
  }
}

TEST(RadialIntegral, ByPartsEquivalence) {
  for (int n : {2, 4, 5, 6}) {
    const RadialIntegral ctx(n);
    for (const char* gname : {"sin", "sin3"}) {
      const TrigPolynomial g = cat(gname);
      const AntiderivativeChain chain = antiderivative_chain(g);
      for (double xi : {5.0, 50.0}) {
        const double direct = ctx.direct(g, xi);
        for (int k = 1; k <= 3; ++k) {
          if (!ctx.parts_admissible(k)) {
            EXPECT_THROW(ctx.by_parts(chain, xi, k), DomainError);
            continue;
          }
          EXPECT_NEAR(ctx.by_parts(chain, xi, k), direct, 1e-9) << n << " " << gname << " k=" << k;
        }
      }
    }
  }
  EXPECT_TRUE(RadialIntegral(6).parts_admissible(3));
  EXPECT_FALSE(RadialIntegral(3).parts_admissible(2));
}

TEST(RadialIntegral, ThreeDimensionalAsymptoticOrder) {
  const RadialIntegral ctx(3);
  const AntiderivativeChain chain = antiderivative_chain(cat("sin"));
  std::vector<double> xs, scaled;
  for (int i = 0; i < 40; ++i) {
    const double xi = 50 * std::pow(8.0, i / 39.0);
    xs.push_back(xi);
    scaled.push_back(std::pow(xi, 1.5) * std::abs(ctx.direct(chain.g, xi) - ctx.asymptotic(chain, xi)));
  }
  EXPECT_LE(slope(xs, scaled), -0.4);
  for (double s : scaled) EXPECT_LT(s, 1.0);
}

TEST(StationaryPhase, QuadraticPhaseLeadingTerm) {
  for (double xi : {100.0, 400.0, 1600.0}) {
    const auto exact = std::complex<double>(
        oracle::simpson([xi](double x) { return std::cos(xi * (1 - x * x / 2)); }, 0, 1, 200000),
        oracle::simpson([xi](double x) { return std::sin(xi * (1 - x * x / 2)); }, 0, 1, 200000));
    const auto lead = stationary_phase_leading(1.0, 1.0, -1.0, xi);
    EXPECT_NEAR(std::abs(lead), std::sqrt(kPi / (2 * xi)), 1e-14);
    // The neglected endpoint term is O(1/xi).
    EXPECT_LT(std::abs(exact - lead) * xi, 1.5) << xi;
  }
}

TEST(StationaryPhase, SineCubedExampleQuadrature) {
  for (double xi : {20.0, 57.3, 120.0}) {
    const double ref = oracle::simpson(
        [xi](double x) { return std::sin(std::asin(std::pow(std::sin(xi * (1 - x * x / 2)), 3))); }, 0, 1, 100000);
    EXPECT_NEAR(sine_cubed_phase_example(xi).quadrature, ref, 1e-9) << xi;
  }
}

TEST(SignChanges, CosineRootsCountedExactly) {
  const OscillationReport rep = sign_changes([](double x) { return std::cos(x); }, 0.5, 30.5, 200, 0.0);
  ASSERT_EQ(rep.count, 10);
  ASSERT_EQ(rep.sign_changes.size(), 10u);
  for (int k = 0; k < 10; ++k) {
    const auto [a, b] = rep.sign_changes[k];
    const double root = kPi / 2 + k * kPi;
    EXPECT_LE(a, root);
    EXPECT_GE(b, root);
    EXPECT_LE(b - a, 1e-4);
    EXPECT_LT(std::cos(a) * std::cos(b), 0.0);
  }
  EXPECT_EQ(rep.verdict, Verdict::Undetermined);
}

TEST(SignChanges, NoiseBelowFloorIsDiscarded) {
  auto tiny = [](double x) { return 1e-14 * std::cos(x); };
  EXPECT_EQ(sign_changes(tiny, 0.5, 30.5, 200, 1e-12).count, 0);
  EXPECT_EQ(sign_changes(tiny, 0.5, 30.5, 200, 0.0).count, 10);
  const OscillationReport none = sign_changes([](double x) { return 1 + x; }, 0, 1, 64, 0.0);
  EXPECT_EQ(none.verdict, Verdict::Finite);
  EXPECT_THROW(sign_changes(tiny, 1, 0, 64, 0.0), DomainError);
  EXPECT_THROW(sign_changes(tiny, 0, 1, 63, 0.0), DomainError);
}

TEST(Classifier, DimensionVerdicts) {
  auto verdict = [](int n, const char* g) { return classify_oscillation(n, antiderivative_chain(cat(g))).verdict; };
  EXPECT_EQ(verdict(2, "sin"), Verdict::Infinite);
  EXPECT_EQ(verdict(3, "sin"), Verdict::Infinite);
  EXPECT_EQ(verdict(5, "sin"), Verdict::Infinite);
  EXPECT_EQ(verdict(5, "cos"), Verdict::Finite);
  EXPECT_EQ(verdict(6, "sin"), Verdict::Finite);
  EXPECT_EQ(verdict(6, "sin-27sin3"), Verdict::Infinite);
  EXPECT_EQ(verdict(4, "cos"), Verdict::Finite);
  EXPECT_EQ(verdict(4, "sin"), Verdict::Infinite);
  EXPECT_EQ(verdict(7, "sin"), Verdict::Finite);
  EXPECT_EQ(verdict(7, "cos"), Verdict::Finite);
  // g2(0) = g3(0) = 0: sum b_k / k^3 = 1 - 8/8 = 0.
  EXPECT_EQ(verdict(8, "b1:1,b2:-8"), Verdict::Undetermined);
}

TEST(Classifier, FourDimensionalAmplitudeComparison) {
  const RadialIntegral ctx(4);
  const VerdictRecord cosine = classify_oscillation(ctx, antiderivative_chain(cat("cos")));
  const double dphi1 = 1 / ctx.reduced().f2.at_one();
  const double amp = 2 / std::pow(ctx.eigenpair().phi1_pp0, 2);
  EXPECT_NEAR(cosine.offset, 1 / dphi1, 1e-12);  // -g2(0)/phi1'(1) with g2(0) = -1
  EXPECT_NEAR(cosine.amplitude_max, amp, 1e-12);
  EXPECT_GT(std::abs(cosine.offset), cosine.amplitude_max);
}

TEST(RiemannLebesgue, UnitWeightClosedForm) {
  const TrigPolynomial g = cat("sin");
  auto one = [](double) { return 1.0; };
  for (double xi : {3.0, 10.0, 77.0, 320.0}) {
    EXPECT_NEAR(weighted_periodic_integral(g, one, xi), (1 - std::cos(xi)) / xi, 1e-11) << xi;
  }
  const DecayRecord rec = riemann_lebesgue_decay(g, one, {10, 20, 40, 80, 160, 320});
  EXPECT_FALSE(rec.violation);
  EXPECT_NEAR(rec.slope, -1.0, 0.05);
}

TEST(RiemannLebesgue, EndpointSingularWeights) {
  const TrigPolynomial g = cat("sin");
  for (double xi : {10.0, 40.0}) {
    // x = s^2 and 1 - x = s^2 turn both weights into smooth integrands.
    const double left = 2 * oracle::simpson([xi](double s) { return std::sin(xi * s * s); }, 0, 1, 20000);
    const double right = 2 * oracle::simpson([xi](double s) { return std::sin(xi * (1 - s * s)); }, 0, 1, 20000);
    EXPECT_NEAR(weighted_periodic_integral(g, [](double x) { return 1 / std::sqrt(x); }, xi), left, 1e-9);
    EXPECT_NEAR(weighted_periodic_integral(g, EndpointWeight([](double, double t) { return 1 / std::sqrt(t); }), xi),
                right, 1e-9);
  }
}

TEST(RiemannLebesgue, InversePhaseWeightChangesVariables) {
  // int_0^1 g(xi x) psi(x) dx = -int_0^1 g(xi phi1(r)) dr, with psi = (phi1^{-1})'.
  const EigenPair ep = eigenpair(4);
  const auto phi = oracle_phi(4);
  const TrigPolynomial g = cat("sin");
  for (double xi : {10.0, 40.0}) {
    const double ref = -oracle::simpson([&](double r) { return g(xi * phi(r)); }, 0, 1, 20000);
    EXPECT_NEAR(weighted_periodic_integral(g, inverse_phase_weight(ep), xi), ref, 1e-8) << xi;
  }
}

TEST(HalfWave, BothFormsAndBesselClosedForm) {
  // g = sin: int_0^pi sin(xi sin x) sin x dx = pi J_1(xi).
  const GeneralNonlinearity s = general_from_catalog("sin");
  for (double xi : {0.5, 7.0, 19.0}) {
    EXPECT_NEAR(half_wave_integral(s, xi), kPi * static_cast<double>(oracle::bessel_j(1, xi)), 1e-11) << xi;
  }
  for (const char* name : {"sin", "sinsqrt", "sinquart"}) {
    const GeneralNonlinearity g = general_from_catalog(name);
    for (double xi = 0.0; xi <= 100.0; xi += 12.5) {
      EXPECT_NEAR(half_wave_integral(g, xi), half_wave_integral_y_form(g, xi), 1e-9) << name << " xi=" << xi;
    }
  }
}

TEST(MomentFunction, SineClosedForm) {
  const GeneralNonlinearity s = general_from_catalog("sin");
  const MomentFunction h(s, 60.0);
  for (double u : {0.0, 1.3, 17.0, 59.0, 75.0}) {
    const double ref = std::sin(u) - u * std::cos(u);
    EXPECT_NEAR(h(u), ref, 1e-9 * std::max(1.0, u)) << u;
    EXPECT_NEAR(moment_integral(s, u), ref, 1e-9 * std::max(1.0, u)) << u;
  }
}

TEST(MomentFunction, SignTestSeparatesExamples) {
  const MomentTestRecord grows = moment_sign_test(general_from_catalog("sinsqrt"), 200, 0.1);
  EXPECT_TRUE(grows.satisfied);
  EXPECT_FALSE(moment_sign_test(general_from_catalog("sinquart"), 200, 0.1).satisfied);
  for (double h : grows.h_at_xi) EXPECT_GT(h, 0.1);
  for (double h : grows.h_at_eta) EXPECT_LT(h, -0.1);
}

}  // namespace
