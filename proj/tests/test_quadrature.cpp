#include <doctest.h>

#include <cmath>

#include "riscov/analytic.hpp"
#include "riscov/quadrature.hpp"
#include "riscov/rng.hpp"

using namespace riscov;

TEST_CASE("polynomial and transcendental reference integrals") {
  auto r = adaptive_integrate([](double x) { return x * x; }, 0.0, 1.0);
  CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  r = adaptive_integrate([](double x) { return std::exp(-x); }, 0.0, 50.0,
                         1e-12);
  CHECK(r.value == doctest::Approx(1.0 - std::exp(-50.0)).epsilon(1e-12));
  CHECK(adaptive_integrate([](double) { return 1.0; }, 2.0, 2.0).value == 0.0);
}

TEST_CASE("closed-form blockage moment matches numeric integration") {
  // inner_integral(X, eta) must agree with direct quadrature of
  // r*exp(-r/eta) over [0, X] to 1e-9 relative across random inputs.
  RandomStream rng(42);
  for (int i = 0; i < 100; ++i) {
    const double eta = rng.uniform(1.0, 200.0);
    const double X = rng.uniform(0.01, 50.0) * eta;
    const auto q = adaptive_integrate(
        [eta](double r) { return r * std::exp(-r / eta); }, 0.0, X, 1e-12);
    CHECK(inner_integral(X, eta) ==
          doctest::Approx(q.value).epsilon(1e-9));
  }
  CHECK(inner_integral(36.0, 36.0) ==
        doctest::Approx(342.45648848362146).epsilon(1e-13));
  // Large-argument guard: the full moment of the exponential.
  CHECK(inner_integral(1e9, 36.0) == 36.0 * 36.0);
  CHECK(inner_integral(std::numeric_limits<double>::infinity(), 48.0) ==
        48.0 * 48.0);
}

TEST_CASE("piecewise panels sum to the single-range result") {
  auto f = [](double x) { return std::exp(-x) * std::cos(3.0 * x); };
  const auto whole = adaptive_integrate(f, 0.0, 10.0, 1e-12);
  const auto split = piecewise_integrate(f, {0.0, 0.5, 2.0, 10.0}, 1e-12);
  CHECK(split.value == doctest::Approx(whole.value).epsilon(1e-11));
}

TEST_CASE("budget exhaustion raises a numeric error") {
  auto nasty = [](double x) { return std::cos(500.0 * x); };
  CHECK_THROWS_AS(adaptive_integrate(nasty, 0.0, 100.0, 1e-14, 1e-300, 4),
                  NumericError);
}
