#ifndef RISCOV_PARAMS_HPP
#define RISCOV_PARAMS_HPP

#include <cmath>
#include <string>
#include <vector>

#include "riscov/errors.hpp"
#include "riscov/units.hpp"

namespace riscov {

/// Transmit-side link budget. All dB/dBm fields are in the unit their name
/// states; the derived budget constant is linear.
struct LinkBudget {
  double p_t_dbm = 23.0;      // transmit power
  double g_t_db = 5.0;        // transmit antenna gain
  double g_r_db = 5.0;        // receive antenna gain
  double f_c_hz = 6e9;        // carrier frequency
  double l_p_db = 0.0;        // constant loss
  double l_r_db = 0.0;        // implementation loss
  double n_0_dbm_hz = -174.0; // noise PSD
  double b_w_hz = 10e6;       // bandwidth
  double f_db = 6.0;          // noise figure

  bool operator==(const LinkBudget&) const = default;
};

/// Model parameters in SI units: densities per m^2 / per m, lengths in m,
/// tau and gamma linear.
struct NetworkParams {
  double lambda_bs = 40e-6;  // BS density, per m^2
  double lambda_l = 2e-3;    // road intensity, m of road per m^2
  double mu = 4e-3;          // RIS linear density, per m of road
  double nu = 25e-3;         // vehicle linear density, per m of road
  double lambda_2 = 200e-6;  // handset density, per m^2
  double alpha_1 = 2.4;      // road path-loss exponent
  double alpha_2 = 3.7;      // urban path-loss exponent
  double eta_1 = 48.0;       // road blockage parameter, m
  double eta_2 = 36.0;       // urban blockage parameter, m
  double tau = 1.0;          // SNR threshold, linear
  double gamma = 5.011872336272722e9;  // link-budget constant, linear (97 dB)
  int n_r = 64;              // RIS element count
};

/// Serving radii derived from the SNR predicate boundaries.
struct Thresholds {
  double c0;   // max direct-serve distance, m
  double c1;   // max on-road RIS distance, m
  double c2;   // max planar RIS distance, m
  double rho;  // alpha_1 / alpha_2
};

/// Linear budget constant p_t*G_t*G_r*(lambda_c/4)^2 / (L_p*L_r*N_0*B_W*F).
inline double gamma_from_budget(const LinkBudget& b) {
  if (!(b.f_c_hz > 0.0)) throw ValidationError("link_budget: f_c must be positive");
  if (!(b.b_w_hz > 0.0)) throw ValidationError("link_budget: B_W must be positive");
  const double lambda_c = kSpeedOfLight / b.f_c_hz;
  const double noise_floor_dbm =
      b.n_0_dbm_hz + 10.0 * std::log10(b.b_w_hz) + b.f_db;
  const double gamma_db = b.p_t_dbm + b.g_t_db + b.g_r_db +
                          20.0 * std::log10(lambda_c / 4.0) - b.l_p_db -
                          b.l_r_db - noise_floor_dbm;
  const double g = db_to_linear(gamma_db);
  if (!std::isfinite(g)) throw ValidationError("link_budget: non-finite gamma");
  return g;
}

/// Names every violated invariant; empty means the parameters are valid.
inline std::vector<std::string> validate(const NetworkParams& p) {
  std::vector<std::string> errors;
  auto finite = [](double x) { return std::isfinite(x); };
  if (!finite(p.lambda_bs) || !finite(p.lambda_l) || !finite(p.mu) ||
      !finite(p.nu) || !finite(p.lambda_2))
    errors.push_back("densities must be finite");
  if (p.lambda_bs < 0 || p.lambda_l < 0 || p.mu < 0 || p.nu < 0 ||
      p.lambda_2 < 0)
    errors.push_back("densities must be nonnegative");
  // alpha = 2 is accepted: the coverage integrals stay finite thanks to the
  // blockage factor, and the experiment sweeps reach down to 2.0.
  if (!(p.alpha_1 >= 2.0)) errors.push_back("alpha_1 must exceed 2");
  if (!(p.alpha_2 >= 2.0)) errors.push_back("alpha_2 must exceed 2");
  if (!(p.eta_1 > 0.0)) errors.push_back("eta_1 must be positive");
  if (!(p.eta_2 > 0.0)) errors.push_back("eta_2 must be positive");
  if (!(p.tau > 0.0) || !finite(p.tau)) errors.push_back("tau must be positive");
  if (!(p.gamma > 0.0) || !finite(p.gamma))
    errors.push_back("gamma must be positive");
  if (p.n_r < 1) errors.push_back("n_r must be at least 1");
  return errors;
}

/// Throwing form of validate().
inline NetworkParams validated(const NetworkParams& p) {
  auto errors = validate(p);
  if (!errors.empty()) {
    std::string msg = "invalid parameters:";
    for (const auto& e : errors) msg += " [" + e + "]";
    throw ValidationError(msg);
  }
  return p;
}

inline Thresholds derived_thresholds(const NetworkParams& p) {
  const double nr2 = static_cast<double>(p.n_r) * static_cast<double>(p.n_r);
  Thresholds th;
  th.c0 = std::pow(p.gamma / p.tau, 1.0 / p.alpha_2);
  th.c1 = std::pow(p.gamma * nr2 / p.tau, 1.0 / p.alpha_1);
  th.c2 = std::pow(p.gamma * nr2 / p.tau, 1.0 / p.alpha_2);
  th.rho = p.alpha_1 / p.alpha_2;
  return th;
}

}  // namespace riscov

#endif
