#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracle.hpp"
#include "resonance/errors.hpp"
#include "resonance/special_functions.hpp"

using namespace resonance;

namespace {

constexpr double kPi = std::numbers::pi;

TEST(Bessel, MatchesLongDoubleSeries) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> order(-0.5, 5.0), arg(0.0, 16.0);
  for (int i = 0; i < 400; ++i) {
    const double nu = order(rng), x = arg(rng);
    const double ref = static_cast<double>(oracle::bessel_j(nu, x));
    EXPECT_NEAR(bessel_j(nu, x).value, ref, 1e-12) << "nu=" << nu << " x=" << x;
  }
}

TEST(Bessel, HalfIntegerClosedForms) {
  for (double x : {0.3, 1.0, 4.0, 9.5}) {
    EXPECT_NEAR(bessel_j(0.5, x).value, std::sqrt(2.0 / (kPi * x)) * std::sin(x), 1e-13);
    EXPECT_NEAR(bessel_j(-0.5, x).value, std::sqrt(2.0 / (kPi * x)) * std::cos(x), 1e-13);
  }
}

TEST(Bessel, DerivativeSatisfiesOdeAndDifferences) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> order(0.0, 5.0), arg(0.5, 15.0);
  for (int i = 0; i < 200; ++i) {
    const double nu = order(rng), x = arg(rng);
    const BesselValue j = bessel_j(nu, x);
    // J'' from the Bessel equation, against a central difference of J'.
    const double jpp = ((nu * nu - x * x) * j.value - x * j.derivative) / (x * x);
    const double h = 1e-5;
    const double fd = (bessel_j(nu, x + h).derivative - bessel_j(nu, x - h).derivative) / (2 * h);
    EXPECT_NEAR(jpp, fd, 1e-6);
    EXPECT_LT(std::abs(x * x * fd + x * j.derivative + (x * x - nu * nu) * j.value), 1e-8);
  }
}

TEST(Bessel, RejectsOutOfDomain) {
  EXPECT_THROW(bessel_j(-1.0, 1.0), DomainError);
  EXPECT_THROW(bessel_j(1.0, -0.1), DomainError);
}

TEST(BesselRoot, AgreesWithBisectionOracle) {
  for (double nu = -0.5; nu <= 5.0; nu += 0.5) {
    EXPECT_NEAR(first_bessel_root(nu), oracle::first_root(nu), 1e-11) << "nu=" << nu;
  }
}

TEST(BesselRoot, SignChangeCertified) {
  for (double nu = -0.5; nu <= 5.0; nu += 0.5) {
    const double r = first_bessel_root(nu);
    EXPECT_LT(bessel_j(nu, r - 1e-6).value * bessel_j(nu, r + 1e-6).value, 0.0);
  }
}

TEST(EigenPair, ClosedFormDimensions) {
  const EigenPair one = eigenpair(1);
  EXPECT_NEAR(one.lambda1, kPi * kPi / 4, 1e-12);
  EXPECT_NEAR(one.lambda2, 9 * kPi * kPi / 4, 1e-12);
  EXPECT_NEAR(one.phi1(0.3), std::cos(kPi * 0.3 / 2), 1e-13);

  const EigenPair three = eigenpair(3);
  EXPECT_NEAR(three.lambda1, kPi * kPi, 1e-10);
  EXPECT_NEAR(three.phi1(0.5), 2 / kPi, 1e-10);
  EXPECT_NEAR(three.phi1(0.8), std::sin(0.8 * kPi) / (0.8 * kPi), 1e-12);

  EXPECT_NEAR(eigenpair(6).nu1, 5.1356223, 1e-7);
  EXPECT_NEAR(eigenpair(6).lambda1, 26.3746164, 1e-6);
}

TEST(EigenPair, StructuralInvariants) {
  for (int n = 1; n <= 10; ++n) {
    const EigenPair ep = eigenpair(n);
    EXPECT_EQ(ep.lambda1, ep.nu1 * ep.nu1);
    EXPECT_NEAR(ep.phi1_pp0, -ep.lambda1 / n, 1e-12 * ep.lambda1);
    EXPECT_GT(ep.lambda2, ep.lambda1);
    // n = 1 takes the half-interval convention, lambda2 = 9 pi^2 / 4.
    if (n > 1) EXPECT_NEAR(ep.lambda2, std::pow(oracle::first_root(0.5 * n), 2), 1e-9);
    EXPECT_NEAR(ep.phi1(0.0), 1.0, 1e-14);
    EXPECT_NEAR(ep.phi1(1.0), 0.0, 1e-13);
  }
  EXPECT_THROW(eigenpair(0), DomainError);
  EXPECT_THROW(eigenpair(11), DomainError);
}

TEST(EigenPair, MatchesBesselOracle) {
  // phi1(r) = Gamma(nu+1) (2 / (nu1 r))^nu J_nu(nu1 r), normalized so phi1(0) = 1.
  for (int n = 2; n <= 10; ++n) {
    const EigenPair ep = eigenpair(n);
    const long double nu = 0.5L * (n - 2);
    for (double r : {0.1, 0.35, 0.7, 0.95}) {
      const long double z = ep.nu1 * r;
      const long double ref = std::tgamma(nu + 1) * std::pow(2 / z, nu) * oracle::bessel_j(nu, z);
      EXPECT_NEAR(ep.phi1(r), static_cast<double>(ref), 1e-12) << "n=" << n << " r=" << r;
    }
  }
}

TEST(EigenPair, OdeResidual) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> radius(1e-3, 1.0);
  for (int n = 1; n <= 10; ++n) {
    const EigenPair ep = eigenpair(n);
    for (int i = 0; i < 100; ++i) {
      const double r = radius(rng);
      const auto d = ep.derivs(r, 2);
      EXPECT_LT(std::abs(d[2] + (n - 1) / r * d[1] + ep.lambda1 * d[0]), 1e-8) << "n=" << n << " r=" << r;
    }
  }
}

TEST(EigenPair, SeriesAndBesselRoutesAgree) {
  for (int n = 1; n <= 10; ++n) {
    const EigenPair ep = eigenpair(n);
    for (double r = 0.04; r <= 0.06 + 1e-12; r += 0.002) {
      const auto s = ep.derivs_from_series(r);
      const auto b = ep.derivs_from_bessel(r);
      for (int k = 0; k <= 2; ++k) EXPECT_NEAR(s[k], b[k], 1e-10) << "n=" << n << " r=" << r << " k=" << k;
    }
  }
}

TEST(EigenPair, InverseRoundTrips) {
  for (int n : {1, 2, 4, 7}) {
    const EigenPair ep = eigenpair(n);
    for (double r : {0.0, 0.01, 0.2, 0.5, 0.9, 1.0}) {
      EXPECT_NEAR(ep.inverse_phi1(ep.phi1(r)), r, 1e-7) << "n=" << n << " r=" << r;
    }
    // The complement form stays accurate where 1 - phi1 has no digits left.
    for (double r : {1e-7, 1e-5, 1e-3, 0.05, 0.4}) {
      const double t = -ep.phi1_pp0 / 2 * r * r;  // leading term of 1 - phi1(r)
      const double back = ep.inverse_phi1_complement(t);
      EXPECT_NEAR(back, r, r * (r < 1e-3 ? 1e-6 : 0.2)) << "n=" << n;
      // 1 - phi1 summed from the series without forming 1 - phi1 in floating point.
      double deficit = 0.0;
      for (std::size_t k = ep.series.size() - 1; k >= 1; --k) deficit = (deficit - ep.series[k]) * back * back;
      EXPECT_NEAR(deficit, t, 1e-12 * t) << "n=" << n << " r=" << r;
    }
  }
}

}  // namespace
