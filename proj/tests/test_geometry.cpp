#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "riscov/geometry.hpp"

using namespace riscov;

TEST_CASE("line parameterization") {
  const Line l{120.0, 0.7};
  // Foot of the perpendicular is at s = 0.
  CHECK(l.at(0.0).norm() == doctest::Approx(120.0).epsilon(1e-12));
  // Any point on the line satisfies -x sin(theta) + y cos(theta) = r.
  for (double s : {-300.0, -1.0, 0.0, 2.5, 777.0}) {
    const Point p = l.at(s);
    CHECK(-p.x * std::sin(l.theta) + p.y * std::cos(l.theta) ==
          doctest::Approx(l.r).epsilon(1e-12));
  }
  // Unit speed along the line.
  const Point a = l.at(1.0), b = l.at(2.0);
  CHECK(std::hypot(b.x - a.x, b.y - a.y) == doctest::Approx(1.0));
}

TEST_CASE("planar point process density and radial law") {
  RandomStream rng(101);
  const double lambda = 50e-6, radius = 600.0;
  const double mean = lambda * kPi * radius * radius;  // ~56.5
  const int reps = 2000;
  long total = 0;
  long inside_half = 0;
  long n_half_total = 0;
  for (int i = 0; i < reps; ++i) {
    const auto pts = sample_bs(lambda, radius, rng);
    total += static_cast<long>(pts.size());
    for (const auto& p : pts) {
      CHECK(p.norm() <= radius + 1e-9);
      ++n_half_total;
      if (p.norm() < radius / std::sqrt(2.0)) ++inside_half;
    }
  }
  const double emp_mean = double(total) / reps;
  CHECK(std::abs(emp_mean - mean) < 3.0 * std::sqrt(mean / reps));
  // Uniformity in area: half the area holds half the points.
  const double frac = double(inside_half) / double(n_half_total);
  CHECK(std::abs(frac - 0.5) < 3.0 * 0.5 / std::sqrt(double(n_half_total)));
}

TEST_CASE("line process count and angle law") {
  RandomStream rng(202);
  const double lambda_l = 3e-3, radius = 2000.0;
  const double mean = 2.0 * lambda_l * radius;  // 12
  const int reps = 2000;
  long total = 0;
  std::vector<double> thetas;
  for (int i = 0; i < reps; ++i) {
    const auto lines = sample_lines(lambda_l, radius, AngleMode::isotropic, rng);
    total += static_cast<long>(lines.size());
    for (const auto& l : lines) {
      CHECK(std::abs(l.r) <= radius);
      CHECK(l.theta >= 0.0);
      CHECK(l.theta < kPi);
      if (thetas.size() < 4000) thetas.push_back(l.theta);
    }
  }
  CHECK(std::abs(double(total) / reps - mean) <
        3.0 * std::sqrt(mean / reps));
  // Kolmogorov-Smirnov against uniform on [0, pi), 1% level.
  std::sort(thetas.begin(), thetas.end());
  const double n = double(thetas.size());
  double d = 0.0;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const double cdf = thetas[i] / kPi;
    d = std::max(d, std::max(cdf - i / n, (i + 1) / n - cdf));
  }
  CHECK(d * std::sqrt(n) < 1.63);
}

TEST_CASE("grid angle mode emits only axis directions") {
  RandomStream rng(303);
  const auto lines = sample_lines(0.01, 3000.0, AngleMode::manhattan, rng);
  CHECK(lines.size() > 10);
  for (const auto& l : lines)
    CHECK((l.theta == 0.0 || l.theta == kPi / 2.0));
}

TEST_CASE("points on lines form the expected area density") {
  // Mean number of points in the disk is mu * lambda_l * pi * R^2.
  RandomStream rng(404);
  const double lambda_l = 4e-3, mu = 5e-3, radius = 1000.0;
  const double mean = mu * lambda_l * kPi * radius * radius;  // ~62.8
  const int reps = 1500;
  std::vector<double> counts;
  for (int i = 0; i < reps; ++i) {
    const auto lines = sample_lines(lambda_l, radius, AngleMode::isotropic, rng);
    const auto pts = sample_cox_on_lines(lines, mu, radius, rng);
    counts.push_back(double(pts.size()));
    for (const auto& p : pts) {
      CHECK(p.pos.norm() <= radius + 1e-9);
      CHECK(p.line_index >= 0);
      CHECK(p.line_index < static_cast<std::ptrdiff_t>(lines.size()));
    }
  }
  double m = 0.0;
  for (double c : counts) m += c;
  m /= reps;
  double var = 0.0;
  for (double c : counts) var += (c - m) * (c - m);
  var /= (reps - 1);  // overdispersed: doubly stochastic counts
  CHECK(std::abs(m - mean) < 3.0 * std::sqrt(var / reps));
}

TEST_CASE("the typical line passes through the origin") {
  RandomStream rng(505);
  for (int i = 0; i < 50; ++i) {
    const Line l = typical_line(AngleMode::isotropic, rng);
    CHECK(l.r == 0.0);
    CHECK(l.at(0.0).norm() == 0.0);
  }
}
