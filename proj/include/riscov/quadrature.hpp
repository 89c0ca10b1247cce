#ifndef RISCOV_QUADRATURE_HPP
#define RISCOV_QUADRATURE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <queue>
#include <string>
#include <vector>

#include "riscov/errors.hpp"

namespace riscov {
namespace detail {

// Gauss-Kronrod 7-15 rule on [-1, 1]; positive abscissae, odd indices are
// the embedded Gauss points.
inline constexpr std::array<double, 8> kGK15Nodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
inline constexpr std::array<double, 8> kGK15Weights = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr std::array<double, 4> kG7Weights = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <std::invocable<double> F>
Segment gk15(const F& f, double a, double b) {
  const double h = 0.5 * (b - a);
  const double c = 0.5 * (a + b);
  double gk = 0.0, g = 0.0;
  for (std::size_t i = 0; i < 8; ++i) {
    const double x = kGK15Nodes[i];
    double fsum = f(c + h * x);
    if (x != 0.0) fsum += f(c - h * x);
    gk += kGK15Weights[i] * fsum;
    if (i % 2 == 1) g += kG7Weights[i / 2] * fsum;
  }
  gk *= h;
  g *= h;
  return {a, b, gk, std::abs(gk - g)};
}

}  // namespace detail

struct QuadResult {
  double value;
  double error;
};

/// Globally adaptive Gauss-Kronrod integration of f over [a, b]. Splits the
/// segment with the largest error estimate until the total estimated error is
/// below max(abs_tol, rel_tol * |value|). Throws NumericError if the budget of
/// segment subdivisions runs out first.
template <std::invocable<double> F>
QuadResult adaptive_integrate(F&& f, double a, double b, double rel_tol = 1e-8,
                              double abs_tol = 1e-14,
                              int max_segments = 4000) {
  if (a == b) return {0.0, 0.0};
  std::priority_queue<detail::Segment> segs;
  segs.push(detail::gk15(f, a, b));
  double total = segs.top().value;
  double err = segs.top().error;
  int n = 1;
  while (err > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (n >= max_segments || segs.top().error <= 0.0) {
      const double achieved = err / std::max(std::abs(total), 1e-300);
      throw NumericError(
          "adaptive_integrate: tolerance not reached, achieved relative "
          "error " +
          std::to_string(achieved));
    }
    const detail::Segment worst = segs.top();
    segs.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const auto left = detail::gk15(f, worst.a, mid);
    const auto right = detail::gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    segs.push(left);
    segs.push(right);
    ++n;
  }
  return {total, err};
}

/// Integrates over consecutive panels [pts[0], pts[1]], ..., summing results.
/// Breakpoints let callers isolate known scale changes (e.g. an exponential
/// shoulder followed by a slow power tail).
template <std::invocable<double> F>
QuadResult piecewise_integrate(F&& f, const std::vector<double>& pts,
                               double rel_tol = 1e-8, double abs_tol = 1e-14,
                               int max_segments = 4000) {
  double value = 0.0, error = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    auto r = adaptive_integrate(f, pts[i], pts[i + 1], rel_tol, abs_tol,
                                max_segments);
    value += r.value;
    error += r.error;
  }
  return {value, error};
}

}  // namespace riscov

#endif
