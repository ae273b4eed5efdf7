#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace resonance {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;

  QuadratureResult& operator+=(const QuadratureResult& o) {
    value += o.value;
    error += o.error;
    converged = converged && o.converged;
    return *this;
  }
};

namespace detail {

// 15-point Kronrod nodes on [-1, 1] (non-negative half) and weights; the
// odd-indexed nodes are the 7-point Gauss nodes.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// One G7-K15 application with the QUADPACK error heuristic.
template <class F>
QuadratureResult gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  double abs_sum = std::abs(kronrod);
  std::array<double, 7> f1{}, f2{};
  for (int j = 0; j < 7; ++j) {
    const double x = h * kKronrodNodes[j];
    f1[j] = f(c - x);
    f2[j] = f(c + x);
    const double s = f1[j] + f2[j];
    kronrod += kKronrodWeights[j] * s;
    abs_sum += kKronrodWeights[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * s;
  }
  const double mean = 0.5 * kronrod;
  double asc = kKronrodWeights[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) asc += kKronrodWeights[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  const double result = kronrod * h;
  const double res_abs = abs_sum * std::abs(h);
  const double res_asc = asc * std::abs(h);
  double err = std::abs((kronrod - gauss) * h);
  if (res_asc != 0.0 && err != 0.0) err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  const double floor = 50.0 * std::numeric_limits<double>::epsilon() * res_abs;
  if (res_abs > std::numeric_limits<double>::min() / (50.0 * std::numeric_limits<double>::epsilon())) {
    err = std::max(err, floor);
  }
  // An estimate at the rounding floor cannot be improved by subdivision.
  return {result, err, err <= floor};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod (7/15) on [a, b] to absolute tolerance
// `tol`: the panel with the largest error estimate is bisected until the sum
// of estimates meets tol, every panel sits at its rounding floor, or
// `max_panels` is reached. converged == false only in the last case.
template <class F>
QuadratureResult integrate(F&& f, double a, double b, double tol, int max_panels = 2000) {
  if (a == b) return {};
  struct Panel {
    double a, b;
    QuadratureResult q;
    bool operator<(const Panel& o) const { return q.error < o.q.error; }
  };
  std::priority_queue<Panel> heap;
  QuadratureResult whole = detail::gk15(f, a, b);
  if (!std::isfinite(whole.value)) return {whole.value, whole.error, false};
  heap.push({a, b, whole});
  double value = whole.value, error = whole.error;
  int panels = 1;
  while (error > tol && !heap.top().q.converged) {
    if (panels >= max_panels) return {value, error, false};
    const Panel worst = heap.top();
    const double m = 0.5 * (worst.a + worst.b);
    if (!(m > worst.a && m < worst.b)) return {value, error, false};
    heap.pop();
    const QuadratureResult left = detail::gk15(f, worst.a, m);
    const QuadratureResult right = detail::gk15(f, m, worst.b);
    value += left.value + right.value - worst.q.value;
    error += left.error + right.error - worst.q.error;
    heap.push({worst.a, m, left});
    heap.push({m, worst.b, right});
    ++panels;
  }
  // Re-sum to shed the drift of the running updates.
  value = 0.0;
  error = 0.0;
  for (; !heap.empty(); heap.pop()) {
    value += heap.top().q.value;
    error += heap.top().q.error;
  }
  return {value, error, std::isfinite(value)};
}

// Integrates over consecutive panels [p_i, p_{i+1}], sharing `tol` in
// proportion to panel width.
template <class F>
QuadratureResult integrate_panels(F&& f, const std::vector<double>& breakpoints, double tol,
                                  int max_panels = 2000) {
  QuadratureResult total;
  if (breakpoints.size() < 2) return total;
  const double span = std::abs(breakpoints.back() - breakpoints.front());
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double a = breakpoints[i], b = breakpoints[i + 1];
    if (a == b) continue;
    total += integrate(f, a, b, tol * std::abs(b - a) / span, max_panels);
  }
  return total;
}

}  // namespace resonance
