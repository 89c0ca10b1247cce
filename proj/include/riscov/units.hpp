#ifndef RISCOV_UNITS_HPP
#define RISCOV_UNITS_HPP

#include <cmath>

namespace riscov {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kPi = 3.14159265358979323846;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

// dBm relative to 1 mW; linear value in watts.
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

// Config-facing units are km based; everything internal is SI meters.
inline double per_km2_to_per_m2(double x) { return x * 1e-6; }
inline double per_km_to_per_m(double x) { return x * 1e-3; }
inline double km_per_km2_to_m_per_m2(double x) { return x * 1e-3; }

}  // namespace riscov

#endif
