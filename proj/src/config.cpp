#include "openqfi/config.hpp"

#include <fstream>
#include <initializer_list>
#include <string>

#include "openqfi/error.hpp"

namespace openqfi {

namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& message) { throw Error(ErrorKind::InvalidConfig, message); }

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<std::string_view> known) {
  if (!obj.is_object()) invalid(where + " must be a JSON object");
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const auto k : known) ok = ok || item.key() == k;
    if (!ok) invalid("unknown key '" + item.key() + "' in " + where);
  }
}

double number(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) invalid(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

std::string text(const json& obj, const char* key, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) invalid(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

std::optional<Scenario> parse_scenario(std::string_view t) {
  if (t == "dephasing") return Scenario::Dephasing;
  if (t == "non-dephasing") return Scenario::NonDephasing;
  return std::nullopt;
}

SweepConfig sweep_config_from_json(const json& doc) {
  reject_unknown(doc, "config", {"scenario", "swept_parameter", "range", "fixed_params", "solver", "output_path",
                                 "audit_fraction", "threads"});
  SweepConfig c;
  const std::string scenario = text(doc, "scenario", "dephasing");
  const auto parsed = parse_scenario(scenario);
  if (!parsed) invalid("unknown scenario '" + scenario + "'");
  c.scenario = *parsed;
  c.swept_parameter = text(doc, "swept_parameter", c.scenario == Scenario::Dephasing ? "r" : "s");

  if (doc.contains("range")) {
    const json& range = doc.at("range");
    reject_unknown(range, "range", {"lo", "hi", "step"});
    c.lo = number(range, "lo", c.lo);
    c.hi = number(range, "hi", c.hi);
    c.step = number(range, "step", c.step);
  }

  if (doc.contains("fixed_params")) {
    const json& p = doc.at("fixed_params");
    reject_unknown(p, "fixed_params",
                   {"g", "gamma", "r", "b_inversion", "polarization", "omega", "s", "n_particles"});
    SystemParams& f = c.fixed_params;
    f.g = number(p, "g", f.g);
    f.gamma = number(p, "gamma", f.gamma);
    f.r = number(p, "r", f.r);
    f.b_inversion = number(p, "b_inversion", f.b_inversion);
    f.s = number(p, "s", f.s);
    const bool nondephasing = c.scenario == Scenario::NonDephasing;
    f.polarization = number(p, "polarization", nondephasing ? f.b_inversion / 2.0 : f.polarization);
    f.omega = number(p, "omega", nondephasing ? f.b_inversion : f.omega);
    if (p.contains("n_particles")) {
      if (!p.at("n_particles").is_number_integer()) invalid("'n_particles' must be an integer");
      f.n_particles = p.at("n_particles").get<int>();
    }
  }

  const std::string solver = text(doc, "solver", "analytic");
  const auto kind = parse_solver(solver);
  if (!kind) invalid("unknown solver '" + solver + "'");
  c.solver = *kind;
  c.output_path = text(doc, "output_path", "");
  c.audit_fraction = number(doc, "audit_fraction", c.audit_fraction);
  if (doc.contains("threads")) {
    if (!doc.at("threads").is_number_unsigned()) invalid("'threads' must be a nonnegative integer");
    c.threads = doc.at("threads").get<unsigned>();
  }
  return c;
}

json to_json(const SweepConfig& c) {
  const SystemParams& f = c.fixed_params;
  return json{
      {"scenario", std::string(to_string(c.scenario))},
      {"swept_parameter", c.swept_parameter},
      {"range", {{"lo", c.lo}, {"hi", c.hi}, {"step", c.step}}},
      {"fixed_params",
       {{"g", f.g},
        {"gamma", f.gamma},
        {"r", f.r},
        {"b_inversion", f.b_inversion},
        {"polarization", f.polarization},
        {"omega", f.omega},
        {"s", f.s},
        {"n_particles", f.n_particles}}},
      {"solver", std::string(to_string(c.solver))},
      {"output_path", c.output_path},
      {"audit_fraction", c.audit_fraction},
      {"threads", c.threads},
  };
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read config " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    invalid(path.string() + ": " + e.what());
  }
  return sweep_config_from_json(doc);
}

}  // namespace openqfi
