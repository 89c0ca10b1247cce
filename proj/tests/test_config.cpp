#include <doctest.h>

#include <json.hpp>

#include "riscov/config.hpp"

using namespace riscov;
using nlohmann::json;

TEST_CASE("empty document yields the experiment-table defaults") {
  const RunSpec spec = parse_run_spec(json::object());
  const NetworkParams p = spec.params.to_network_params();
  CHECK(p.lambda_bs == doctest::Approx(40e-6).epsilon(1e-15));
  CHECK(p.lambda_l == doctest::Approx(2e-3).epsilon(1e-15));
  CHECK(p.mu == doctest::Approx(4e-3).epsilon(1e-15));
  CHECK(p.nu == doctest::Approx(25e-3).epsilon(1e-15));
  CHECK(p.lambda_2 == doctest::Approx(200e-6).epsilon(1e-15));
  CHECK(p.alpha_1 == 2.4);
  CHECK(p.alpha_2 == 3.7);
  CHECK(p.eta_1 == 48.0);
  CHECK(p.eta_2 == 36.0);
  CHECK(p.tau == 1.0);  // 0 dB
  CHECK(p.gamma == doctest::Approx(db_to_linear(97.0)).epsilon(1e-14));
  CHECK(p.n_r == 64);
  CHECK(validate(p).empty());
}

TEST_CASE("budget precedence") {
  json doc = {{"gamma_db", 97.0}, {"link_budget", json::object()}};
  const RunSpec spec = parse_run_spec(doc);
  CHECK(spec.params.to_network_params().gamma ==
        doctest::Approx(db_to_linear(97.0)).epsilon(1e-14));
  REQUIRE(spec.warnings.size() == 1);

  // Budget alone drives gamma.
  json doc2 = {{"link_budget", json::object()}};
  const RunSpec s2 = parse_run_spec(doc2);
  CHECK(linear_to_db(s2.params.to_network_params().gamma) ==
        doctest::Approx(92.93218922432644).epsilon(1e-12));
  CHECK(s2.warnings.empty());
}

TEST_CASE("strict keys and values") {
  CHECK_THROWS_AS(parse_run_spec({{"bs_density", 40}}), ValidationError);
  CHECK_THROWS_AS(parse_run_spec({{"sim", {{"estimator", "magic"}}}}),
                  ValidationError);
  CHECK_THROWS_AS(parse_run_spec({{"sim", {{"trials", -5}}}}),
                  ValidationError);
  CHECK_THROWS_AS(parse_run_spec({{"output", {{"format", "xlsx"}}}}),
                  ValidationError);
  CHECK_THROWS_AS(parse_run_spec({{"tau_db", "loud"}}), ValidationError);
}

TEST_CASE("sweep section validation") {
  json doc = {{"sweep", {{"param", "ris_per_km"}, {"values", {1, 2, 3}}}},
              {"output", {{"path", "/tmp/x.csv"}}}};
  const RunSpec spec = parse_run_spec(doc);
  REQUIRE(spec.sweep.has_value());
  CHECK(spec.sweep->values.size() == 3);

  json no_out = {{"sweep", {{"param", "ris_per_km"}, {"values", {1}}}}};
  CHECK_THROWS_AS(parse_run_spec(no_out), ValidationError);
  json bad_name = {{"sweep", {{"param", "frobnication"}, {"values", {1}}}},
                   {"output", {{"path", "x"}}}};
  CHECK_THROWS_AS(parse_run_spec(bad_name), ValidationError);
  json empty_vals = {{"sweep", {{"param", "tau_db"}, {"values", json::array()}}},
                     {"output", {{"path", "x"}}}};
  CHECK_THROWS_AS(parse_run_spec(empty_vals), ValidationError);
  json bad_val = {{"sweep", {{"param", "alpha_road"}, {"values", {1.0}}}},
                  {"output", {{"path", "x"}}}};
  CHECK_THROWS_AS(parse_run_spec(bad_val), ValidationError);
}

TEST_CASE("serialization round trip") {
  RunSpec spec;
  spec.params.ris_per_km = 7.5;
  spec.params.tau_db = -5.0;
  spec.params.gamma_db = 83.0;
  spec.params.link_budget = LinkBudget{.p_t_dbm = 30.0, .g_t_db = 12.0};
  spec.params.n_ris_elements = 100;
  spec.sim.trials = 12345;
  spec.sim.seed = 99;
  spec.sim.estimator = Estimator::bernoulli;
  spec.sim.angle_mode = AngleMode::manhattan;
  spec.sim.workers = 2;
  spec.analytic.variant = Variant::consistent;
  spec.analytic.rel_tol = 1e-6;
  spec.sweep = SweepSpec{.param = "ris_per_km",
                         .values = {1.0, 2.0},
                         .param2 = "n_ris_elements",
                         .values2 = {16.0, 64.0}};
  spec.output = {.path = "/tmp/out.csv", .format = OutputFormat::jsonl};
  const RunSpec back = parse_run_spec(write_config(spec));
  CHECK(back == spec);

  // Defaults round-trip too.
  const RunSpec d = parse_run_spec(json::object());
  CHECK(parse_run_spec(write_config(d)) == d);
}

TEST_CASE("dotted overrides") {
  json doc = json::object();
  apply_override(doc, "tau_db=-5");
  apply_override(doc, "sim.trials=5000");
  apply_override(doc, "analytic.variant=consistent");
  apply_override(doc, "sim.estimator=bernoulli");
  const RunSpec spec = parse_run_spec(doc);
  CHECK(spec.params.tau_db == -5.0);
  CHECK(spec.sim.trials == 5000);
  CHECK(spec.analytic.variant == Variant::consistent);
  CHECK(spec.sim.estimator == Estimator::bernoulli);
  CHECK_THROWS_AS(apply_override(doc, "no_equals_sign"), ValidationError);
}
