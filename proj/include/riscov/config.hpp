#ifndef RISCOV_CONFIG_HPP
#define RISCOV_CONFIG_HPP

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "riscov/analytic.hpp"
#include "riscov/errors.hpp"
#include "riscov/montecarlo.hpp"
#include "riscov/params.hpp"
#include "riscov/units.hpp"

namespace riscov {

// Configuration keeps field-study units (per km, dB); conversion to SI
// happens exactly once, in to_network_params().
struct ParamsConfig {
  double bs_per_km2 = 40.0;
  double road_km_per_km2 = 2.0;
  double ris_per_km = 4.0;
  double vehicle_per_km = 25.0;
  double handset_per_km2 = 200.0;
  double alpha_road = 2.4;
  double alpha_urban = 3.7;
  double eta_road_m = 48.0;
  double eta_urban_m = 36.0;
  double tau_db = 0.0;
  std::optional<double> gamma_db;
  std::optional<LinkBudget> link_budget;
  int n_ris_elements = 64;

  bool operator==(const ParamsConfig&) const = default;

  NetworkParams to_network_params() const {
    NetworkParams p;
    p.lambda_bs = per_km2_to_per_m2(bs_per_km2);
    p.lambda_l = km_per_km2_to_m_per_m2(road_km_per_km2);
    p.mu = per_km_to_per_m(ris_per_km);
    p.nu = per_km_to_per_m(vehicle_per_km);
    p.lambda_2 = per_km2_to_per_m2(handset_per_km2);
    p.alpha_1 = alpha_road;
    p.alpha_2 = alpha_urban;
    p.eta_1 = eta_road_m;
    p.eta_2 = eta_urban_m;
    p.tau = db_to_linear(tau_db);
    if (gamma_db) {
      p.gamma = db_to_linear(*gamma_db);
    } else if (link_budget) {
      p.gamma = gamma_from_budget(*link_budget);
    } else {
      p.gamma = db_to_linear(97.0);
    }
    p.n_r = n_ris_elements;
    return p;
  }
};

struct SweepSpec {
  std::string param;
  std::vector<double> values;
  std::string param2;
  std::vector<double> values2;
  bool operator==(const SweepSpec&) const = default;
};

enum class OutputFormat { csv, jsonl };

struct OutputSpec {
  std::string path;  // empty = stdout
  OutputFormat format = OutputFormat::csv;
  bool operator==(const OutputSpec&) const = default;
};

struct RunSpec {
  ParamsConfig params;
  SimConfig sim{.trials = 0};  // 0 = no MC columns in sweeps
  AnalyticOptions analytic;
  std::optional<SweepSpec> sweep;
  OutputSpec output;
  std::vector<std::string> warnings;  // populated at load, not serialized

  bool operator==(const RunSpec& o) const {
    return params == o.params && sim.trials == o.sim.trials &&
           sim.seed == o.sim.seed && sim.estimator == o.sim.estimator &&
           sim.epsilon_trunc == o.sim.epsilon_trunc &&
           sim.angle_mode == o.sim.angle_mode && sim.workers == o.sim.workers &&
           analytic.variant == o.analytic.variant &&
           analytic.rel_tol == o.analytic.rel_tol &&
           analytic.abs_tol == o.analytic.abs_tol &&
           analytic.epsilon_int == o.analytic.epsilon_int &&
           sweep == o.sweep && output == o.output;
  }
};

namespace detail {

using nlohmann::json;

inline void require_keys(const json& obj, const char* where,
                         std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) ok = true;
    if (!ok)
      throw ValidationError(std::string("unknown key '") + it.key() + "' in " +
                            where);
  }
}

template <typename T>
void get_if_present(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) {
    try {
      out = obj.at(key).get<T>();
    } catch (const json::exception&) {
      throw ValidationError(std::string("invalid value for '") + key + "'");
    }
  }
}

inline LinkBudget parse_budget(const json& obj) {
  require_keys(obj, "link_budget",
               {"p_t_dbm", "g_t_db", "g_r_db", "f_c_hz", "l_p_db", "l_r_db",
                "n_0_dbm_hz", "b_w_hz", "f_db"});
  LinkBudget b;
  get_if_present(obj, "p_t_dbm", b.p_t_dbm);
  get_if_present(obj, "g_t_db", b.g_t_db);
  get_if_present(obj, "g_r_db", b.g_r_db);
  get_if_present(obj, "f_c_hz", b.f_c_hz);
  get_if_present(obj, "l_p_db", b.l_p_db);
  get_if_present(obj, "l_r_db", b.l_r_db);
  get_if_present(obj, "n_0_dbm_hz", b.n_0_dbm_hz);
  get_if_present(obj, "b_w_hz", b.b_w_hz);
  get_if_present(obj, "f_db", b.f_db);
  return b;
}

inline const std::vector<std::string>& sweepable_params() {
  static const std::vector<std::string> names = {
      "bs_per_km2",   "road_km_per_km2", "ris_per_km",  "vehicle_per_km",
      "handset_per_km2", "alpha_road",   "alpha_urban", "eta_road_m",
      "eta_urban_m",  "tau_db",          "gamma_db",    "n_ris_elements"};
  return names;
}

inline void set_param(ParamsConfig& p, const std::string& name, double value) {
  if (name == "bs_per_km2") p.bs_per_km2 = value;
  else if (name == "road_km_per_km2") p.road_km_per_km2 = value;
  else if (name == "ris_per_km") p.ris_per_km = value;
  else if (name == "vehicle_per_km") p.vehicle_per_km = value;
  else if (name == "handset_per_km2") p.handset_per_km2 = value;
  else if (name == "alpha_road") p.alpha_road = value;
  else if (name == "alpha_urban") p.alpha_urban = value;
  else if (name == "eta_road_m") p.eta_road_m = value;
  else if (name == "eta_urban_m") p.eta_urban_m = value;
  else if (name == "tau_db") p.tau_db = value;
  else if (name == "gamma_db") p.gamma_db = value;
  else if (name == "n_ris_elements") p.n_ris_elements = static_cast<int>(value);
  else
    throw ValidationError("unknown sweep parameter '" + name + "'");
}

}  // namespace detail

inline RunSpec parse_run_spec(const nlohmann::json& doc) {
  using detail::get_if_present;
  using detail::require_keys;
  if (!doc.is_object())
    throw ValidationError("config: top-level JSON object expected");
  require_keys(doc, "config",
               {"bs_per_km2", "road_km_per_km2", "ris_per_km",
                "vehicle_per_km", "handset_per_km2", "alpha_road",
                "alpha_urban", "eta_road_m", "eta_urban_m", "tau_db",
                "gamma_db", "link_budget", "n_ris_elements", "sim", "analytic",
                "sweep", "output"});
  RunSpec spec;
  auto& p = spec.params;
  get_if_present(doc, "bs_per_km2", p.bs_per_km2);
  get_if_present(doc, "road_km_per_km2", p.road_km_per_km2);
  get_if_present(doc, "ris_per_km", p.ris_per_km);
  get_if_present(doc, "vehicle_per_km", p.vehicle_per_km);
  get_if_present(doc, "handset_per_km2", p.handset_per_km2);
  get_if_present(doc, "alpha_road", p.alpha_road);
  get_if_present(doc, "alpha_urban", p.alpha_urban);
  get_if_present(doc, "eta_road_m", p.eta_road_m);
  get_if_present(doc, "eta_urban_m", p.eta_urban_m);
  get_if_present(doc, "tau_db", p.tau_db);
  get_if_present(doc, "n_ris_elements", p.n_ris_elements);
  if (doc.contains("gamma_db")) p.gamma_db = doc.at("gamma_db").get<double>();
  if (doc.contains("link_budget"))
    p.link_budget = detail::parse_budget(doc.at("link_budget"));
  if (p.gamma_db && p.link_budget)
    spec.warnings.push_back(
        "both gamma_db and link_budget given; gamma_db wins");

  if (doc.contains("sim")) {
    const auto& s = doc.at("sim");
    require_keys(s, "sim",
                 {"trials", "seed", "estimator", "angle_mode", "epsilon_trunc",
                  "workers"});
    get_if_present(s, "trials", spec.sim.trials);
    get_if_present(s, "seed", spec.sim.seed);
    get_if_present(s, "epsilon_trunc", spec.sim.epsilon_trunc);
    get_if_present(s, "workers", spec.sim.workers);
    if (s.contains("estimator")) {
      const auto v = s.at("estimator").get<std::string>();
      if (v == "bernoulli") spec.sim.estimator = Estimator::bernoulli;
      else if (v == "conditional") spec.sim.estimator = Estimator::conditional;
      else throw ValidationError("sim.estimator: '" + v + "' is not valid");
    }
    if (s.contains("angle_mode")) {
      const auto v = s.at("angle_mode").get<std::string>();
      if (v == "isotropic") spec.sim.angle_mode = AngleMode::isotropic;
      else if (v == "manhattan") spec.sim.angle_mode = AngleMode::manhattan;
      else throw ValidationError("sim.angle_mode: '" + v + "' is not valid");
    }
    if (spec.sim.trials < 0)
      throw ValidationError("sim.trials must be nonnegative");
    if (!(spec.sim.epsilon_trunc > 0.0 && spec.sim.epsilon_trunc < 1.0))
      throw ValidationError("sim.epsilon_trunc must be in (0, 1)");
  }
  if (doc.contains("analytic")) {
    const auto& a = doc.at("analytic");
    require_keys(a, "analytic",
                 {"variant", "rel_tol", "abs_tol", "epsilon_int"});
    get_if_present(a, "rel_tol", spec.analytic.rel_tol);
    get_if_present(a, "abs_tol", spec.analytic.abs_tol);
    get_if_present(a, "epsilon_int", spec.analytic.epsilon_int);
    if (a.contains("variant")) {
      const auto v = a.at("variant").get<std::string>();
      if (v == "paper") spec.analytic.variant = Variant::paper;
      else if (v == "consistent") spec.analytic.variant = Variant::consistent;
      else throw ValidationError("analytic.variant: '" + v + "' is not valid");
    }
    if (!(spec.analytic.rel_tol > 0.0) || !(spec.analytic.abs_tol > 0.0) ||
        !(spec.analytic.epsilon_int > 0.0))
      throw ValidationError("analytic tolerances must be positive");
  }
  if (doc.contains("output")) {
    const auto& o = doc.at("output");
    require_keys(o, "output", {"path", "format"});
    get_if_present(o, "path", spec.output.path);
    if (o.contains("format")) {
      const auto v = o.at("format").get<std::string>();
      if (v == "csv") spec.output.format = OutputFormat::csv;
      else if (v == "jsonl") spec.output.format = OutputFormat::jsonl;
      else throw ValidationError("output.format: '" + v + "' is not valid");
    }
  }
  if (doc.contains("sweep")) {
    const auto& sw = doc.at("sweep");
    require_keys(sw, "sweep", {"param", "values", "param2", "values2"});
    SweepSpec sweep;
    get_if_present(sw, "param", sweep.param);
    get_if_present(sw, "values", sweep.values);
    get_if_present(sw, "param2", sweep.param2);
    get_if_present(sw, "values2", sweep.values2);
    auto known = [](const std::string& n) {
      for (const auto& k : detail::sweepable_params())
        if (k == n) return true;
      return false;
    };
    if (!known(sweep.param))
      throw ValidationError("sweep.param '" + sweep.param +
                            "' is not a sweepable parameter");
    if (sweep.values.empty())
      throw ValidationError("sweep.values must be non-empty");
    if (!sweep.param2.empty() && !known(sweep.param2))
      throw ValidationError("sweep.param2 '" + sweep.param2 +
                            "' is not a sweepable parameter");
    if (!sweep.param2.empty() && sweep.values2.empty())
      throw ValidationError("sweep.values2 must be non-empty");
    // Each grid value must itself produce valid parameters.
    for (double v : sweep.values) {
      ParamsConfig probe = spec.params;
      detail::set_param(probe, sweep.param, v);
      for (double v2 : sweep.values2.empty() ? std::vector<double>{0.0}
                                             : sweep.values2) {
        if (!sweep.param2.empty()) detail::set_param(probe, sweep.param2, v2);
        validated(probe.to_network_params());
      }
    }
    if (spec.output.path.empty())
      throw ValidationError("sweep requires output.path (or --out)");
    spec.sweep = sweep;
  }
  return spec;
}

inline nlohmann::json write_config(const RunSpec& spec) {
  nlohmann::json doc;
  const auto& p = spec.params;
  doc["bs_per_km2"] = p.bs_per_km2;
  doc["road_km_per_km2"] = p.road_km_per_km2;
  doc["ris_per_km"] = p.ris_per_km;
  doc["vehicle_per_km"] = p.vehicle_per_km;
  doc["handset_per_km2"] = p.handset_per_km2;
  doc["alpha_road"] = p.alpha_road;
  doc["alpha_urban"] = p.alpha_urban;
  doc["eta_road_m"] = p.eta_road_m;
  doc["eta_urban_m"] = p.eta_urban_m;
  doc["tau_db"] = p.tau_db;
  if (p.gamma_db) doc["gamma_db"] = *p.gamma_db;
  if (p.link_budget) {
    const auto& b = *p.link_budget;
    doc["link_budget"] = {
        {"p_t_dbm", b.p_t_dbm},   {"g_t_db", b.g_t_db},
        {"g_r_db", b.g_r_db},     {"f_c_hz", b.f_c_hz},
        {"l_p_db", b.l_p_db},     {"l_r_db", b.l_r_db},
        {"n_0_dbm_hz", b.n_0_dbm_hz}, {"b_w_hz", b.b_w_hz},
        {"f_db", b.f_db}};
  }
  doc["n_ris_elements"] = p.n_ris_elements;
  doc["sim"] = {
      {"trials", spec.sim.trials},
      {"seed", spec.sim.seed},
      {"estimator",
       spec.sim.estimator == Estimator::bernoulli ? "bernoulli"
                                                  : "conditional"},
      {"angle_mode",
       spec.sim.angle_mode == AngleMode::manhattan ? "manhattan"
                                                   : "isotropic"},
      {"epsilon_trunc", spec.sim.epsilon_trunc},
      {"workers", spec.sim.workers}};
  doc["analytic"] = {
      {"variant",
       spec.analytic.variant == Variant::paper ? "paper" : "consistent"},
      {"rel_tol", spec.analytic.rel_tol},
      {"abs_tol", spec.analytic.abs_tol},
      {"epsilon_int", spec.analytic.epsilon_int}};
  if (spec.sweep) {
    nlohmann::json sw = {{"param", spec.sweep->param},
                         {"values", spec.sweep->values}};
    if (!spec.sweep->param2.empty()) {
      sw["param2"] = spec.sweep->param2;
      sw["values2"] = spec.sweep->values2;
    }
    doc["sweep"] = sw;
  }
  doc["output"] = {
      {"path", spec.output.path},
      {"format", spec.output.format == OutputFormat::csv ? "csv" : "jsonl"}};
  return doc;
}

/// Applies a "dotted.key=value" override onto a config document. The value is
/// parsed as JSON when possible, else taken as a string.
inline void apply_override(nlohmann::json& doc, const std::string& keyval) {
  const auto eq = keyval.find('=');
  if (eq == std::string::npos)
    throw ValidationError("--set expects key=value, got '" + keyval + "'");
  const std::string key = keyval.substr(0, eq);
  const std::string raw = keyval.substr(eq + 1);
  nlohmann::json value;
  try {
    value = nlohmann::json::parse(raw);
  } catch (const nlohmann::json::exception&) {
    value = raw;
  }
  nlohmann::json* node = &doc;
  std::size_t pos = 0;
  while (true) {
    const auto dot = key.find('.', pos);
    const std::string part = key.substr(pos, dot - pos);
    if (part.empty()) throw ValidationError("--set: empty key segment");
    if (dot == std::string::npos) {
      (*node)[part] = value;
      break;
    }
    node = &(*node)[part];
    pos = dot + 1;
  }
}

inline RunSpec load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("config parse error in '" + path + "': " + e.what());
  }
  return parse_run_spec(doc);
}

}  // namespace riscov

#endif
