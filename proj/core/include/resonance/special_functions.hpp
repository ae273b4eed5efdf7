#pragma once

#include <array>
#include <vector>

namespace resonance {

struct BesselValue {
  double value;
  double derivative;
};

// J_order(x) and J_order'(x). Requires order >= -1/2 and x >= 0.
BesselValue bessel_j(double order, double x);

// Smallest x > 0 with J_order(x) = 0.
double first_bessel_root(double order);

// Principal Dirichlet eigenpair of the radial Laplacian on the unit ball in
// dimension n, normalized by phi1(0) = 1. For n = 1 this is cos(pi r / 2).
struct EigenPair {
  int n = 0;
  double nu1 = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double c0 = 0.0;
  double phi1_pp0 = 0.0;
  // Even Taylor coefficients: phi1(r) = sum_k series[k] r^(2k).
  std::vector<double> series;

  double order() const { return 0.5 * (n - 2); }
  double phi1(double r) const;
  // phi1 and derivatives 0..max_order (max_order <= 4) at r in [0, 1].
  std::vector<double> derivs(double r, int max_order) const;
  // The two evaluation routes, exposed so they can be compared directly.
  std::array<double, 5> derivs_from_series(double r) const;
  std::array<double, 5> derivs_from_bessel(double r) const;
  // r in [0, 1] with phi1(r) = y, for y in [0, 1]. phi1 is decreasing.
  double inverse_phi1(double y) const;
  // r with 1 - phi1(r) = t; keeps full relative accuracy as t -> 0.
  double inverse_phi1_complement(double t) const;
};

EigenPair eigenpair(int n);

inline std::vector<double> phi1_derivs(const EigenPair& ep, double r, int max_order) {
  return ep.derivs(r, max_order);
}

}  // namespace resonance
