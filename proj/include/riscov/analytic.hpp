#ifndef RISCOV_ANALYTIC_HPP
#define RISCOV_ANALYTIC_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "riscov/channel.hpp"
#include "riscov/errors.hpp"
#include "riscov/params.hpp"
#include "riscov/quadrature.hpp"

namespace riscov {

// `paper`: the published coverage formulas exactly as printed. `consistent`:
// the same
// derivation redone against the simulated event semantics, which differs
// in three places: the per-RIS success is LOS(user link) AND some LOS feed
// (not blocked-times-all-feeds-blocked), the typical-line term counts both
// half-lines (2*mu), and the line-process term uses the signed-r
// parameterization (2*lambda_l). `consistent` is the variant the Monte Carlo
// engine is expected to certify.
enum class Variant { paper, consistent };

struct AnalyticOptions {
  Variant variant = Variant::paper;
  double rel_tol = 1e-7;      // outer quadrature, relative
  double abs_tol = 1e-12;     // outer quadrature, absolute
  double epsilon_int = 1e-12; // truncation probability for integral limits
};

/// Closed form of int_0^X r exp(-r/eta) dr.
inline double inner_integral(double X, double eta) {
  const double z = X / eta;
  if (z > 700.0 || std::isinf(X)) return eta * eta;  // exp underflow limit
  return eta * eta * (1.0 - std::exp(-z) * (1.0 + z));
}

namespace detail {

struct AnalyticCtx {
  NetworkParams p;
  Thresholds th;
  AnalyticOptions opts;

  AnalyticCtx(const NetworkParams& params, const AnalyticOptions& o)
      : p(validated(params)), th(derived_thresholds(params)), opts(o) {}

  /// P(some BS within the feed disk of radius R is LOS), by PGFL.
  double feed_prob(double R) const {
    return -std::expm1(-2.0 * kPi * p.lambda_bs * inner_integral(R, p.eta_2));
  }

  double f1(double t) const {
    if (!(t > 0.0)) throw ValidationError("f1: t must be positive");
    const double R = th.c2 / std::pow(t, th.rho);
    if (opts.variant == Variant::paper)
      return (1.0 - std::exp(-t / p.eta_1)) *
             std::exp(-2.0 * kPi * p.lambda_bs * inner_integral(R, p.eta_2));
    return 1.0 - std::exp(-t / p.eta_1) * feed_prob(R);
  }

  double f2(double t) const {
    if (!(t > 0.0)) throw ValidationError("f2: t must be positive");
    const double R = th.c2 / t;
    if (opts.variant == Variant::paper)
      return (1.0 - std::exp(-t / p.eta_2)) *
             std::exp(-2.0 * kPi * p.lambda_bs * inner_integral(R, p.eta_2));
    return 1.0 - std::exp(-t / p.eta_2) * feed_prob(R);
  }

  double direct_exponent() const {
    return 2.0 * kPi * p.lambda_bs * inner_integral(th.c0, p.eta_2);
  }

  // Exponent contributed by the RISs on the typical line.
  double online_exponent() const {
    if (p.mu == 0.0) return 0.0;
    const double inner_rel = 0.1 * opts.rel_tol;
    if (opts.variant == Variant::consistent) {
      // Integrand carries exp(-t/eta_1); tail beyond the truncation distance
      // contributes less than eta_1 * epsilon_int.
      const double hi =
          std::min(th.c1, truncation_distance(p.eta_1, opts.epsilon_int));
      auto g = [this](double t) {
        return std::exp(-t / p.eta_1) *
               feed_prob(th.c2 / std::pow(t, th.rho));
      };
      return 2.0 * p.mu *
             adaptive_integrate(g, 0.0, hi, inner_rel, opts.abs_tol).value;
    }
    // Paper form: 1 - f1 keeps a slow power tail through the shrinking feed
    // disk, so the full [0, c1] range matters. Integrate in geometric panels
    // past the blockage shoulder.
    std::vector<double> pts{0.0};
    double a = std::min(th.c1, truncation_distance(p.eta_1, opts.epsilon_int));
    pts.push_back(a);
    while (a < th.c1) {
      a = std::min(th.c1, a * 8.0);
      pts.push_back(a);
    }
    auto g = [this](double t) { return 1.0 - f1(t); };
    return p.mu * piecewise_integrate(g, pts, inner_rel, opts.abs_tol).value;
  }

  // Exponent contributed by RISs on all other lines.
  double offline_exponent() const {
    if (p.mu == 0.0 || p.lambda_l == 0.0) return 0.0;
    const double inner_rel = 0.1 * opts.rel_tol;
    if (opts.variant == Variant::consistent) {
      const double trunc = truncation_distance(p.eta_2, opts.epsilon_int);
      const double u_hi = std::min(th.c2, trunc);
      auto per_line = [&](double u) {
        const double span = std::sqrt(th.c2 * th.c2 - u * u);
        const double t_hi = std::min(span, trunc);
        auto g = [&](double t) {
          const double d = std::sqrt(u * u + t * t);
          return std::exp(-d / p.eta_2) * feed_prob(th.c2 / d);
        };
        const double v =
            adaptive_integrate(g, 0.0, t_hi, inner_rel, opts.abs_tol).value;
        return -std::expm1(-2.0 * p.mu * v);
      };
      return 2.0 * p.lambda_l *
             adaptive_integrate(per_line, 0.0, u_hi, opts.rel_tol,
                                opts.abs_tol)
                 .value;
    }
    auto per_line = [&](double u) {
      const double span = std::sqrt(th.c2 * th.c2 - u * u);
      auto g = [&](double t) { return 1.0 - f2(std::sqrt(u * u + t * t)); };
      const double v =
          adaptive_integrate(g, 0.0, span, inner_rel, opts.abs_tol).value;
      return -std::expm1(-2.0 * p.mu * v);
    };
    return p.lambda_l *
           adaptive_integrate(per_line, 0.0, th.c2, opts.rel_tol, opts.abs_tol)
               .value;
  }
};

inline double checked_probability(double x, const char* what) {
  if (!std::isfinite(x) || x < 0.0 || x > 1.0)
    throw NumericError(std::string(what) + ": result outside [0, 1]");
  return x;
}

}  // namespace detail

inline double vehicle_weight(const NetworkParams& p) {
  const double denom = p.lambda_l * p.nu + p.lambda_2;
  if (!(denom > 0.0))
    throw ValidationError("undefined mixture: lambda_l*nu + lambda_2 is zero");
  return p.lambda_l * p.nu / denom;
}

inline double cov_no_ris(const NetworkParams& p,
                         const AnalyticOptions& opts = {}) {
  detail::AnalyticCtx ctx(p, opts);
  return detail::checked_probability(-std::expm1(-ctx.direct_exponent()),
                                     "cov_no_ris");
}

inline double f1(double t, const NetworkParams& p,
                 const AnalyticOptions& opts = {}) {
  return detail::AnalyticCtx(p, opts).f1(t);
}

inline double f2(double t, const NetworkParams& p,
                 const AnalyticOptions& opts = {}) {
  return detail::AnalyticCtx(p, opts).f2(t);
}

inline double cov_vehicle(const NetworkParams& p,
                          const AnalyticOptions& opts = {}) {
  detail::AnalyticCtx ctx(p, opts);
  const double e = ctx.direct_exponent() + ctx.online_exponent() +
                   ctx.offline_exponent();
  return detail::checked_probability(-std::expm1(-e), "cov_vehicle");
}

inline double cov_handset(const NetworkParams& p,
                          const AnalyticOptions& opts = {}) {
  detail::AnalyticCtx ctx(p, opts);
  const double e = ctx.direct_exponent() + ctx.offline_exponent();
  return detail::checked_probability(-std::expm1(-e), "cov_handset");
}

inline double cov_total(const NetworkParams& p,
                        const AnalyticOptions& opts = {}) {
  const double w1 = vehicle_weight(p);
  detail::AnalyticCtx ctx(p, opts);
  const double direct = ctx.direct_exponent();
  const double online = ctx.online_exponent();
  const double offline = ctx.offline_exponent();
  const double cv = -std::expm1(-(direct + online + offline));
  const double ch = -std::expm1(-(direct + offline));
  return detail::checked_probability(w1 * cv + (1.0 - w1) * ch, "cov_total");
}

/// (1 - cov_vehicle) / (1 - cov_handset), evaluated as a single exponential.
inline double outage_ratio(const NetworkParams& p,
                           const AnalyticOptions& opts = {}) {
  detail::AnalyticCtx ctx(p, opts);
  return std::exp(-ctx.online_exponent());
}

/// Ratio of the no-RIS outage to the population-averaged with-RIS outage.
inline double outage_gain(const NetworkParams& p,
                          const AnalyticOptions& opts = {}) {
  const double w1 = vehicle_weight(p);
  detail::AnalyticCtx ctx(p, opts);
  const double online = ctx.online_exponent();
  const double offline = ctx.offline_exponent();
  const double o1 = std::exp(-online - offline);
  const double o2 = std::exp(-offline);
  const double g = 1.0 / (w1 * o1 + (1.0 - w1) * o2);
  if (!std::isfinite(g) || g < 0.0)
    throw NumericError("outage_gain: non-finite result");
  return g;
}

}  // namespace riscov

#endif
