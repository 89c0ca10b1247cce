#ifndef RISCOV_MONTECARLO_HPP
#define RISCOV_MONTECARLO_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "riscov/channel.hpp"
#include "riscov/errors.hpp"
#include "riscov/geometry.hpp"
#include "riscov/params.hpp"
#include "riscov/rng.hpp"

namespace riscov {

enum class Estimator { bernoulli, conditional };

struct SimConfig {
  long trials = 100000;
  std::uint64_t seed = 1;
  Estimator estimator = Estimator::conditional;
  double epsilon_trunc = 1e-9;
  AngleMode angle_mode = AngleMode::isotropic;
  int workers = 0;  // 0 = hardware concurrency
};

struct CoverageEstimate {
  double p_hat = 0.0;
  double ci95_halfwidth = 0.0;
  long trials = 0;
  // First-success attribution in the order direct -> on-line RIS -> off-line
  // RIS; the three fractions sum to p_hat.
  double frac_direct = 0.0;
  double frac_online_ris = 0.0;
  double frac_offline_ris = 0.0;
};

namespace detail {

inline constexpr double kZ95 = 1.959963984540054;

// Substream tags; every random quantity of a trial has its own keyed stream,
// so sampling one component never perturbs another. That keeps vehicle and
// handset trials on the same seed geometrically identical, and makes RIS
// point sets supersets under increased mu (counts by CDF inversion, positions
// from a separate stream).
enum StreamTag : std::uint64_t {
  kTagAngle = 1,
  kTagOnlineCount,
  kTagOnlinePos,
  kTagLineCount,
  kTagLinePos,
  kTagOfflineCount,
  kTagOfflinePos,
  kTagBsCount,
  kTagBsPos,
  kTagBlockage,
  kTagHandsetSalt,
};

struct Windows {
  double r_online;   // on-line RIS sampling radius
  double r_offline;  // off-line RIS / line sampling radius
  double r_bs;       // BS sampling radius
};

inline Windows make_windows(const NetworkParams& p, const Thresholds& th,
                            double eps) {
  Windows w;
  w.r_online = std::min(th.c1, truncation_distance(p.eta_1, eps));
  w.r_offline = std::min(th.c2, truncation_distance(p.eta_2, eps));
  // Feeds farther than the planar truncation distance from an RIS are a.s.
  // blocked, so blockage rather than c1/c2 bounds the physical BS window.
  const double r_ris = std::max(w.r_online, w.r_offline);
  w.r_bs = std::max(th.c0, r_ris + truncation_distance(p.eta_2, eps));
  return w;
}

inline long coupled_count(RandomStream& rng, double mean) {
  // Inversion keeps the paired-seed superset coupling; fall back for means
  // where exp(-mean) underflows.
  return mean < 500.0 ? rng.poisson_coupled(mean) : rng.poisson(mean);
}

struct TrialGeometry {
  std::vector<double> bs_x, bs_y, bs_d;
  double theta0 = 0.0;
  std::vector<double> online_t;             // signed distance on typical line
  std::vector<Point> offline_pos;
  std::vector<double> offline_d;
};

inline TrialGeometry sample_trial_geometry(const NetworkParams& p,
                                           const Windows& w, AngleMode mode,
                                           std::uint64_t base,
                                           bool with_typical_line) {
  TrialGeometry g;
  {
    RandomStream cnt(RandomStream::derive(base, kTagBsCount));
    RandomStream pos(RandomStream::derive(base, kTagBsPos));
    const long n = cnt.poisson(p.lambda_bs * kPi * w.r_bs * w.r_bs);
    g.bs_x.reserve(n);
    g.bs_y.reserve(n);
    g.bs_d.reserve(n);
    for (long i = 0; i < n; ++i) {
      const double r = w.r_bs * std::sqrt(pos.uniform());
      const double a = pos.uniform(0.0, 2.0 * kPi);
      g.bs_x.push_back(r * std::cos(a));
      g.bs_y.push_back(r * std::sin(a));
      g.bs_d.push_back(r);
    }
  }
  if (with_typical_line) {
    RandomStream ang(RandomStream::derive(base, kTagAngle));
    g.theta0 = sample_angle(mode, ang);
    RandomStream cnt(RandomStream::derive(base, kTagOnlineCount));
    RandomStream pos(RandomStream::derive(base, kTagOnlinePos));
    const long n = coupled_count(cnt, p.mu * 2.0 * w.r_online);
    g.online_t.reserve(n);
    for (long i = 0; i < n; ++i)
      g.online_t.push_back(w.r_online * (2.0 * pos.uniform() - 1.0));
  }
  {
    RandomStream lcnt(RandomStream::derive(base, kTagLineCount));
    RandomStream lpos(RandomStream::derive(base, kTagLinePos));
    const long nl = lcnt.poisson(2.0 * p.lambda_l * w.r_offline);
    for (long k = 0; k < nl; ++k) {
      Line line;
      line.r = lpos.uniform(-w.r_offline, w.r_offline);
      line.theta = sample_angle(mode, lpos);
      const double half =
          std::sqrt(w.r_offline * w.r_offline - line.r * line.r);
      RandomStream rcnt(RandomStream::derive(
          RandomStream::derive(base, kTagOfflineCount), k));
      RandomStream rpos(RandomStream::derive(
          RandomStream::derive(base, kTagOfflinePos), k));
      const long nr = coupled_count(rcnt, p.mu * 2.0 * half);
      for (long i = 0; i < nr; ++i) {
        const Point pt = line.at(rpos.uniform(-half, half));
        g.offline_pos.push_back(pt);
        g.offline_d.push_back(pt.norm());
      }
    }
  }
  return g;
}

// Conditional (Rao-Blackwell) factors: survival probabilities of the three
// mechanisms given the sampled geometry, exact by per-link independence of
// the blockage events.
struct TrialFactors {
  double s_direct = 1.0;   // P(no LOS direct BS | geometry)
  double s_online = 1.0;   // P(no serving on-line RIS | geometry)
  double s_offline = 1.0;  // P(no serving off-line RIS | geometry)
};

inline double feed_survival(const TrialGeometry& g, const NetworkParams& p,
                            double cx, double cy, double radius) {
  const double r2 = radius * radius;
  double s = 1.0;
  for (std::size_t j = 0; j < g.bs_x.size(); ++j) {
    const double dx = g.bs_x[j] - cx;
    const double dy = g.bs_y[j] - cy;
    const double d2 = dx * dx + dy * dy;
    if (d2 < r2) s *= 1.0 - std::exp(-std::sqrt(d2) / p.eta_2);
  }
  return s;
}

inline TrialFactors conditional_trial(const NetworkParams& p,
                                      const Thresholds& th,
                                      const TrialGeometry& g,
                                      bool with_typical_line) {
  TrialFactors f;
  for (double d : g.bs_d)
    if (direct_snr_ok(d, th)) f.s_direct *= 1.0 - std::exp(-d / p.eta_2);
  if (with_typical_line) {
    const double ct = std::cos(g.theta0), st = std::sin(g.theta0);
    for (double t : g.online_t) {
      const double a = std::abs(t);
      if (a <= 0.0) continue;
      const double q = std::exp(-a / p.eta_1);
      const double fr = feed_radius(a, LinkClass::linear, p);
      const double fail = feed_survival(g, p, t * ct, t * st, fr);
      f.s_online *= 1.0 - q * (1.0 - fail);
    }
  }
  for (std::size_t i = 0; i < g.offline_pos.size(); ++i) {
    const double s = g.offline_d[i];
    if (s <= 0.0) continue;
    const double q = std::exp(-s / p.eta_2);
    const double fr = th.c2 / s;  // feed_radius, planar class
    const double fail =
        feed_survival(g, p, g.offline_pos[i].x, g.offline_pos[i].y, fr);
    f.s_offline *= 1.0 - q * (1.0 - fail);
  }
  return f;
}

// Bernoulli trial: every directed link pair draws its own blockage coin.
// Returns the covering mechanism: 0 none, 1 direct, 2 on-line, 3 off-line.
inline int bernoulli_trial(const NetworkParams& p, const Thresholds& th,
                           const TrialGeometry& g, bool with_typical_line,
                           std::uint64_t base) {
  RandomStream blk(RandomStream::derive(base, kTagBlockage));
  for (double d : g.bs_d)
    if (direct_snr_ok(d, th) && blk.uniform() < std::exp(-d / p.eta_2))
      return 1;
  auto any_los_feed = [&](double cx, double cy, double radius) {
    const double r2 = radius * radius;
    for (std::size_t j = 0; j < g.bs_x.size(); ++j) {
      const double dx = g.bs_x[j] - cx;
      const double dy = g.bs_y[j] - cy;
      const double d2 = dx * dx + dy * dy;
      if (d2 < r2 && blk.uniform() < std::exp(-std::sqrt(d2) / p.eta_2))
        return true;
    }
    return false;
  };
  if (with_typical_line) {
    const double ct = std::cos(g.theta0), st = std::sin(g.theta0);
    for (double t : g.online_t) {
      const double a = std::abs(t);
      if (a <= 0.0) continue;
      const bool user_los = blk.uniform() < std::exp(-a / p.eta_1);
      const double fr = feed_radius(a, LinkClass::linear, p);
      if (user_los && any_los_feed(t * ct, t * st, fr)) return 2;
    }
  }
  for (std::size_t i = 0; i < g.offline_pos.size(); ++i) {
    const double s = g.offline_d[i];
    if (s <= 0.0) continue;
    const bool user_los = blk.uniform() < std::exp(-s / p.eta_2);
    if (user_los &&
        any_los_feed(g.offline_pos[i].x, g.offline_pos[i].y, th.c2 / s))
      return 3;
  }
  return 0;
}

struct TrialShares {
  double direct, online, offline;
};

inline TrialShares run_one_trial(const NetworkParams& p, const Thresholds& th,
                                 const Windows& w, const SimConfig& cfg,
                                 long trial, bool with_typical_line) {
  const std::uint64_t base = RandomStream::derive(cfg.seed, trial);
  const TrialGeometry g =
      sample_trial_geometry(p, w, cfg.angle_mode, base, with_typical_line);
  if (cfg.estimator == Estimator::conditional) {
    const TrialFactors f = conditional_trial(p, th, g, with_typical_line);
    const double a = 1.0 - f.s_direct;
    const double b = f.s_direct * (1.0 - f.s_online);
    const double c = f.s_direct * f.s_online * (1.0 - f.s_offline);
    return {a, b, c};
  }
  const int mech = bernoulli_trial(p, th, g, with_typical_line, base);
  return {mech == 1 ? 1.0 : 0.0, mech == 2 ? 1.0 : 0.0,
          mech == 3 ? 1.0 : 0.0};
}

inline double wilson_halfwidth(double p_hat, long n) {
  const double z = kZ95;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  return z / denom *
         std::sqrt(p_hat * (1.0 - p_hat) / n + z2 / (4.0 * double(n) * n));
}

template <typename TrialFn>
CoverageEstimate run_trials(const SimConfig& cfg, TrialFn&& trial_fn) {
  if (cfg.trials < 1) throw ValidationError("sim: trials must be >= 1");
  const long n = cfg.trials;
  std::vector<TrialShares> shares(static_cast<std::size_t>(n));
  int workers = cfg.workers > 0
                    ? cfg.workers
                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp<int>(workers, 1, 64);
  if (workers == 1) {
    for (long i = 0; i < n; ++i) shares[i] = trial_fn(i);
  } else {
    std::vector<std::thread> pool;
    const long chunk = (n + workers - 1) / workers;
    for (int t = 0; t < workers; ++t) {
      const long lo = t * chunk;
      const long hi = std::min(n, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back([&, lo, hi] {
        for (long i = lo; i < hi; ++i) shares[i] = trial_fn(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  // Reduction in trial-index order: results are bit-identical regardless of
  // the worker count.
  double sum_d = 0.0, sum_on = 0.0, sum_off = 0.0;
  for (const auto& s : shares) {
    sum_d += s.direct;
    sum_on += s.online;
    sum_off += s.offline;
  }
  CoverageEstimate est;
  est.trials = n;
  est.frac_direct = sum_d / n;
  est.frac_online_ris = sum_on / n;
  est.frac_offline_ris = sum_off / n;
  est.p_hat = est.frac_direct + est.frac_online_ris + est.frac_offline_ris;
  if (cfg.estimator == Estimator::bernoulli) {
    est.ci95_halfwidth = wilson_halfwidth(est.p_hat, n);
  } else {
    double ss = 0.0;
    for (const auto& s : shares) {
      const double dev = (s.direct + s.online + s.offline) - est.p_hat;
      ss += dev * dev;
    }
    const double sd = n > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
    est.ci95_halfwidth = kZ95 * sd / std::sqrt(double(n));
  }
  return est;
}

}  // namespace detail

/// Coverage of the typical user with no RISs in the system (Bernoulli trials,
/// Wilson interval).
inline CoverageEstimate estimate_no_ris(const NetworkParams& params,
                                        const SimConfig& cfg) {
  const NetworkParams p = validated(params);
  const Thresholds th = derived_thresholds(p);
  const double radius =
      std::min(th.c0, truncation_distance(p.eta_2, cfg.epsilon_trunc));
  return detail::run_trials(cfg, [&](long trial) -> detail::TrialShares {
    const std::uint64_t base = RandomStream::derive(cfg.seed, trial);
    RandomStream cnt(RandomStream::derive(base, detail::kTagBsCount));
    RandomStream pos(RandomStream::derive(base, detail::kTagBsPos));
    RandomStream blk(RandomStream::derive(base, detail::kTagBlockage));
    const long nbs = cnt.poisson(p.lambda_bs * kPi * radius * radius);
    for (long i = 0; i < nbs; ++i) {
      const double d = radius * std::sqrt(pos.uniform());
      if (direct_snr_ok(d, th) && blk.uniform() < std::exp(-d / p.eta_2))
        return {1.0, 0.0, 0.0};
    }
    return {0.0, 0.0, 0.0};
  });
}

inline CoverageEstimate estimate_vehicle(const NetworkParams& params,
                                         const SimConfig& cfg) {
  const NetworkParams p = validated(params);
  const Thresholds th = derived_thresholds(p);
  const detail::Windows w = detail::make_windows(p, th, cfg.epsilon_trunc);
  return detail::run_trials(cfg, [&](long trial) {
    return detail::run_one_trial(p, th, w, cfg, trial, true);
  });
}

inline CoverageEstimate estimate_handset(const NetworkParams& params,
                                         const SimConfig& cfg) {
  const NetworkParams p = validated(params);
  const Thresholds th = derived_thresholds(p);
  const detail::Windows w = detail::make_windows(p, th, cfg.epsilon_trunc);
  return detail::run_trials(cfg, [&](long trial) {
    return detail::run_one_trial(p, th, w, cfg, trial, false);
  });
}

/// Population mixture of the two typical users. The handset half runs on an
/// independently derived seed so the interval combination by independence is
/// exact.
inline CoverageEstimate estimate_total(const NetworkParams& params,
                                       const SimConfig& cfg) {
  const double w1 = vehicle_weight(validated(params));
  const double w2 = 1.0 - w1;
  const CoverageEstimate veh = estimate_vehicle(params, cfg);
  SimConfig hcfg = cfg;
  hcfg.seed = RandomStream::derive(cfg.seed, detail::kTagHandsetSalt);
  const CoverageEstimate hand = estimate_handset(params, hcfg);
  CoverageEstimate est;
  est.trials = cfg.trials;
  est.p_hat = w1 * veh.p_hat + w2 * hand.p_hat;
  est.ci95_halfwidth = std::sqrt(
      w1 * w1 * veh.ci95_halfwidth * veh.ci95_halfwidth +
      w2 * w2 * hand.ci95_halfwidth * hand.ci95_halfwidth);
  est.frac_direct = w1 * veh.frac_direct + w2 * hand.frac_direct;
  est.frac_online_ris =
      w1 * veh.frac_online_ris + w2 * hand.frac_online_ris;
  est.frac_offline_ris =
      w1 * veh.frac_offline_ris + w2 * hand.frac_offline_ris;
  return est;
}

}  // namespace riscov

#endif
