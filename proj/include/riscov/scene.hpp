#ifndef RISCOV_SCENE_HPP
#define RISCOV_SCENE_HPP

#include <cinttypes>
#include <cstdio>
#include <ostream>
#include <vector>

#include "riscov/geometry.hpp"
#include "riscov/params.hpp"
#include "riscov/rng.hpp"

namespace riscov {

/// A full sampled scene for visual inspection: BSs, roads, RISs and vehicles
/// on the roads, handsets in the plane, plus the typical line through the
/// origin (the user sits at the origin).
struct Scene {
  ScenarioRealization geo;
  std::vector<RisPoint> vehicles;
  std::vector<Point> handsets;
};

inline Scene sample_scene(const NetworkParams& params, double radius,
                          std::uint64_t seed,
                          AngleMode mode = AngleMode::isotropic) {
  const NetworkParams p = validated(params);
  if (!(radius > 0.0)) throw ValidationError("scene: radius must be positive");
  Scene s;
  s.geo.window_radius = radius;
  RandomStream rng(RandomStream::mix(seed));
  s.geo.bs_points = sample_bs(p.lambda_bs, radius, rng);
  s.geo.lines = sample_lines(p.lambda_l, radius, mode, rng);
  s.geo.typical_line = typical_line(mode, rng);
  // RISs and vehicles share the same roads, including the typical one.
  std::vector<Line> all_lines = s.geo.lines;
  all_lines.push_back(*s.geo.typical_line);
  s.geo.ris_points = sample_cox_on_lines(all_lines, p.mu, radius, rng);
  for (auto& r : s.geo.ris_points)
    if (r.line_index == static_cast<std::ptrdiff_t>(s.geo.lines.size()))
      r.line_index = -1;  // typical line marker
  s.vehicles = sample_cox_on_lines(all_lines, p.nu, radius, rng);
  for (auto& v : s.vehicles)
    if (v.line_index == static_cast<std::ptrdiff_t>(s.geo.lines.size()))
      v.line_index = -1;
  s.handsets = sample_bs(p.lambda_2, radius, rng);
  return s;
}

/// CSV rows: kind,x_m,y_m,line_index for points, kind,r_m,theta_rad,-- for
/// lines (line_index -1 marks the typical line; empty for planar points).
inline void write_scene_csv(std::ostream& out, const Scene& s) {
  char buf[128];
  out << "kind,x_m,y_m,line_index,r_m,theta_rad\n";
  auto row = [&](const char* kind, double x, double y, long idx, bool has_idx) {
    if (has_idx)
      std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%ld,,\n", kind, x, y, idx);
    else
      std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,,,\n", kind, x, y);
    out << buf;
  };
  for (const auto& l : s.geo.lines) {
    std::snprintf(buf, sizeof buf, "line,,,,%.17g,%.17g\n", l.r, l.theta);
    out << buf;
  }
  if (s.geo.typical_line) {
    std::snprintf(buf, sizeof buf, "typical_line,,,,%.17g,%.17g\n",
                  s.geo.typical_line->r, s.geo.typical_line->theta);
    out << buf;
  }
  for (const auto& b : s.geo.bs_points) row("bs", b.x, b.y, 0, false);
  for (const auto& r : s.geo.ris_points)
    row("ris", r.pos.x, r.pos.y, static_cast<long>(r.line_index), true);
  for (const auto& v : s.vehicles)
    row("vehicle", v.pos.x, v.pos.y, static_cast<long>(v.line_index), true);
  for (const auto& h : s.handsets) row("handset", h.x, h.y, 0, false);
}

}  // namespace riscov

#endif
