#include <doctest.h>

#include "riscov/params.hpp"
#include "riscov/units.hpp"

using namespace riscov;

TEST_CASE("serving radii at the default parameters") {
  const NetworkParams p;  // defaults: the experiment table
  const Thresholds th = derived_thresholds(p);
  CHECK(th.c0 == doctest::Approx(418.4288507901576).epsilon(1e-12));
  CHECK(th.c1 == doctest::Approx(352222.13480070705).epsilon(1e-12));
  CHECK(th.c2 == doctest::Approx(3962.188389981508).epsilon(1e-12));
  CHECK(th.rho == doctest::Approx(2.4 / 3.7).epsilon(1e-15));
  // c2 = c0 * Nr^(2/alpha_2)
  CHECK(th.c2 ==
        doctest::Approx(th.c0 * std::pow(64.0, 2.0 / 3.7)).epsilon(1e-12));
}

TEST_CASE("thresholds scale as the predicate boundary") {
  NetworkParams p;
  p.tau = db_to_linear(-5.0);
  const Thresholds th = derived_thresholds(p);
  // Lowering tau by 5 dB stretches every radius by 10^(0.5/alpha).
  CHECK(th.c0 == doctest::Approx(418.4288507901576 *
                                 std::pow(10.0, 0.5 / 3.7)).epsilon(1e-12));
  CHECK(th.c1 == doctest::Approx(352222.13480070705 *
                                 std::pow(10.0, 0.5 / 2.4)).epsilon(1e-12));
}

TEST_CASE("link budget constant") {
  LinkBudget b;  // 23 dBm, 5+5 dB gains, 6 GHz, 10 MHz, NF 6 dB
  CHECK(linear_to_db(gamma_from_budget(b)) ==
        doctest::Approx(92.93218922432644).epsilon(1e-12));
  b.l_p_db = 9.94;
  CHECK(linear_to_db(gamma_from_budget(b)) ==
        doctest::Approx(82.99218922432644).epsilon(1e-12));
  b.f_c_hz = 0.0;
  CHECK_THROWS_AS(gamma_from_budget(b), ValidationError);
}

TEST_CASE("validate names every violated invariant") {
  CHECK(validate(NetworkParams{}).empty());
  NetworkParams p;
  p.lambda_bs = -1.0;
  p.tau = 0.0;
  p.alpha_1 = 1.9;
  p.n_r = 0;
  const auto errors = validate(p);
  CHECK(errors.size() == 4);
  CHECK_THROWS_AS(validated(p), ValidationError);
  // alpha exactly 2 is the sweep boundary and stays valid.
  NetworkParams q;
  q.alpha_1 = 2.0;
  CHECK(validate(q).empty());
}

TEST_CASE("unit conversions") {
  CHECK(db_to_linear(0.0) == 1.0);
  CHECK(db_to_linear(97.0) == doctest::Approx(5.011872336272722e9).epsilon(1e-14));
  CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(per_km2_to_per_m2(40.0) == doctest::Approx(40e-6).epsilon(1e-15));
  CHECK(km_per_km2_to_m_per_m2(2.0) == doctest::Approx(2e-3).epsilon(1e-15));
}
