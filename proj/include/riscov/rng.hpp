#ifndef RISCOV_RNG_HPP
#define RISCOV_RNG_HPP

#include <cmath>
#include <cstdint>

namespace riscov {

// Counter-based random stream: output i is a pure function of (key, i), so a
// stream derived from (seed, trial, component) yields the same draws no matter
// how trials are scheduled across workers. The mixer is the splitmix64
// finalizer over a Weyl sequence.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t key) : key_(key) {}

  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  /// Derives a child key; chainable for (seed, trial, component, index).
  static std::uint64_t derive(std::uint64_t key, std::uint64_t salt) {
    return mix(key ^ (0x9E3779B97F4A7C15ULL + salt * 0xD1B54A32D192ED03ULL));
  }

  std::uint64_t next_u64() {
    return mix(key_ + (++counter_) * 0x9E3779B97F4A7C15ULL);
  }

  /// Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Exponential with mean 1.
  double exponential() { return -std::log1p(-uniform()); }

  /// Poisson count via unit-rate arrival times. Any mean, not coupled.
  long poisson(double mean) {
    if (mean <= 0.0) return 0;
    long n = -1;
    double t = 0.0;
    while (t < mean) {
      t += exponential();
      ++n;
    }
    return n;
  }

  // Poisson by CDF inversion from a single uniform. The count is
  // non-decreasing in the mean for a fixed draw, which gives the superset
  // coupling the paired-seed monotonicity checks rely on. Requires a mean
  // small enough that exp(-mean) does not underflow.
  long poisson_coupled(double mean) {
    if (mean <= 0.0) return 0;
    const double u = uniform();
    double p = std::exp(-mean);
    double cdf = p;
    long k = 0;
    while (u > cdf && k < 100000) {
      ++k;
      p *= mean / static_cast<double>(k);
      cdf += p;
    }
    return k;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace riscov

#endif
