#ifndef RISCOV_CHANNEL_HPP
#define RISCOV_CHANNEL_HPP

#include <cmath>

#include "riscov/errors.hpp"
#include "riscov/params.hpp"

namespace riscov {

/// linear: on-road RIS-to-same-line-vehicle links (alpha_1, eta_1).
/// planar: every other link, including all BS links (alpha_2, eta_2).
enum class LinkClass { linear, planar };

/// P(link of length d is unblocked) = exp(-d/eta).
inline double los_probability(double d, double eta) {
  return std::exp(-d / eta);
}

/// Direct BS signal clears the threshold iff d < c0 (strict).
inline bool direct_snr_ok(double d, const Thresholds& th) { return d < th.c0; }

/// Reflected-path predicate: gamma * N_r^2 * d1^-alpha2 * d2^-alpha > tau.
inline bool reflected_snr_ok(double d1, double d2, LinkClass link_class,
                             const NetworkParams& p) {
  if (!(d1 > 0.0) || !(d2 > 0.0))
    throw ValidationError("reflected_snr_ok: degenerate geometry (d <= 0)");
  const double alpha = link_class == LinkClass::linear ? p.alpha_1 : p.alpha_2;
  const double nr2 = static_cast<double>(p.n_r) * static_cast<double>(p.n_r);
  return p.gamma * nr2 * std::pow(d1, -p.alpha_2) * std::pow(d2, -alpha) >
         p.tau;
}

/// Feed-disk radius around an RIS at distance d2: the largest BS distance for
/// which reflected_snr_ok still holds. reflected_snr_ok(d1, d2) iff
/// d1 < feed_radius(d2).
inline double feed_radius(double d2, LinkClass link_class,
                          const NetworkParams& p) {
  const double alpha = link_class == LinkClass::linear ? p.alpha_1 : p.alpha_2;
  const double nr2 = static_cast<double>(p.n_r) * static_cast<double>(p.n_r);
  return std::pow(p.gamma * nr2 / (p.tau * std::pow(d2, alpha)),
                  1.0 / p.alpha_2);
}

/// Distance beyond which los_probability(d, eta) < epsilon.
inline double truncation_distance(double eta, double epsilon) {
  return eta * std::log(1.0 / epsilon);
}

}  // namespace riscov

#endif
