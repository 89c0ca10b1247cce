#ifndef RISCOV_GEOMETRY_HPP
#define RISCOV_GEOMETRY_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "riscov/rng.hpp"
#include "riscov/units.hpp"

namespace riscov {

struct Point {
  double x = 0.0;
  double y = 0.0;
  double norm() const { return std::hypot(x, y); }
};

/// Road line in signed-perpendicular-distance form: r in R, theta in [0, pi).
/// The foot of the perpendicular from the origin is r * (-sin t, cos t) and
/// the direction vector is (cos t, sin t).
struct Line {
  double r = 0.0;
  double theta = 0.0;
  Point at(double s) const {
    return {-r * std::sin(theta) + s * std::cos(theta),
            r * std::cos(theta) + s * std::sin(theta)};
  }
};

enum class AngleMode { isotropic, manhattan };

struct RisPoint {
  Point pos;
  std::ptrdiff_t line_index;  // -1 marks the typical line
  double along;               // signed position on the carrying line, m
};

/// One sampled geometry, kept for scene dumps and tests.
struct ScenarioRealization {
  std::vector<Point> bs_points;
  std::vector<Line> lines;
  std::vector<RisPoint> ris_points;
  std::optional<Line> typical_line;
  double window_radius = 0.0;
};

inline double sample_angle(AngleMode mode, RandomStream& rng) {
  if (mode == AngleMode::manhattan)
    return rng.uniform() < 0.5 ? 0.0 : kPi / 2.0;
  return rng.uniform(0.0, kPi);
}

/// Homogeneous PPP of the given planar intensity on a disk around the origin.
inline std::vector<Point> sample_bs(double lambda_bs, double radius,
                                    RandomStream& rng) {
  std::vector<Point> pts;
  const long n = rng.poisson(lambda_bs * kPi * radius * radius);
  pts.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    const double r = radius * std::sqrt(rng.uniform());
    const double a = rng.uniform(0.0, 2.0 * kPi);
    pts.push_back({r * std::cos(a), r * std::sin(a)});
  }
  return pts;
}

/// Poisson line process restricted to lines hitting the disk of the given
/// radius: count ~ Poisson(2 * lambda_l * radius), r uniform signed.
inline std::vector<Line> sample_lines(double lambda_l, double radius,
                                      AngleMode mode, RandomStream& rng) {
  std::vector<Line> lines;
  const long n = rng.poisson(2.0 * lambda_l * radius);
  lines.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    Line l;
    l.r = rng.uniform(-radius, radius);
    l.theta = sample_angle(mode, rng);
    lines.push_back(l);
  }
  return lines;
}

/// 1-D PPP of linear intensity mu on each line's chord inside the disk.
inline std::vector<RisPoint> sample_cox_on_lines(const std::vector<Line>& lines,
                                                 double mu,
                                                 double window_radius,
                                                 RandomStream& rng) {
  std::vector<RisPoint> pts;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const double r = lines[k].r;
    if (std::abs(r) >= window_radius) continue;
    const double half = std::sqrt(window_radius * window_radius - r * r);
    const long n = rng.poisson(mu * 2.0 * half);
    for (long i = 0; i < n; ++i) {
      const double s = rng.uniform(-half, half);
      pts.push_back({lines[k].at(s), static_cast<std::ptrdiff_t>(k), s});
    }
  }
  return pts;
}

/// The Palm typical line through the origin: r = 0 exactly.
inline Line typical_line(AngleMode mode, RandomStream& rng) {
  return {0.0, sample_angle(mode, rng)};
}

}  // namespace riscov

#endif
