#include "kcbs/io.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "kcbs/error.hpp"

namespace kcbs {

namespace detail {
extern const std::array<std::pair<std::string_view, std::string_view>, 2> kEmbeddedPresets;
}

namespace {

[[noreturn]] void config_error(const std::string& field, const std::string& reason) {
  throw Error(ErrorKind::ConfigError, field + ": " + reason);
}

void reject_unknown(const Json& j, const std::set<std::string>& known, const std::string& prefix) {
  for (const auto& [key, _] : j.items()) {
    if (!known.contains(key)) config_error(prefix + key, "unknown field");
  }
}

double get_number(const Json& v, const std::string& field) {
  if (!v.is_number()) config_error(field, "expected a number");
  return v.get<double>();
}

std::int64_t get_integer(const Json& v, const std::string& field) {
  if (!v.is_number_integer()) config_error(field, "expected an integer");
  return v.get<std::int64_t>();
}

template <class F>
void overlay(const Json& j, const char* key, const std::string& prefix, F&& assign) {
  if (const auto it = j.find(key); it != j.end()) assign(*it, prefix + key);
}

}  // namespace

std::string to_string(PairOrder order) { return order == PairOrder::Forward ? "forward" : "reverse"; }

PairOrder parse_pair_order(std::string_view text) {
  if (text == "forward") return PairOrder::Forward;
  if (text == "reverse") return PairOrder::Reverse;
  config_error("pair_order", "expected forward or reverse, got '" + std::string(text) + "'");
}

Json to_json(const NoiseModel& n) {
  return Json{{"pulse_angle_error_std", n.pulse_angle_error_std},
              {"init_error_prob", n.init_error_prob},
              {"lambda_bright", n.lambda_bright},
              {"lambda_dark", n.lambda_dark},
              {"readout_threshold", n.readout_threshold},
              {"init_threshold", n.init_threshold},
              {"nuclear_flip_prob", n.nuclear_flip_prob},
              {"charge_good_prob", n.charge_good_prob},
              {"plus_is_bright", n.plus_is_bright}};
}

Json to_json(const RunConfig& c) {
  return Json{{"seed", c.seed},
              {"shots_per_term", c.shots_per_term},
              {"pair_order", to_string(c.pair_order)},
              {"noise", to_json(c.noise)}};
}

NoiseModel apply_noise_json(const Json& j, NoiseModel n) {
  const std::string p = "noise.";
  if (!j.is_object()) config_error("noise", "expected an object");
  reject_unknown(j,
                 {"pulse_angle_error_std", "init_error_prob", "lambda_bright", "lambda_dark",
                  "readout_threshold", "init_threshold", "nuclear_flip_prob", "charge_good_prob",
                  "plus_is_bright"},
                 p);
  overlay(j, "pulse_angle_error_std", p, [&](const Json& v, const std::string& f) { n.pulse_angle_error_std = get_number(v, f); });
  overlay(j, "init_error_prob", p, [&](const Json& v, const std::string& f) { n.init_error_prob = get_number(v, f); });
  overlay(j, "lambda_bright", p, [&](const Json& v, const std::string& f) { n.lambda_bright = get_number(v, f); });
  overlay(j, "lambda_dark", p, [&](const Json& v, const std::string& f) { n.lambda_dark = get_number(v, f); });
  overlay(j, "readout_threshold", p, [&](const Json& v, const std::string& f) {
    n.readout_threshold = static_cast<int>(get_integer(v, f));
  });
  overlay(j, "init_threshold", p, [&](const Json& v, const std::string& f) {
    n.init_threshold = static_cast<int>(get_integer(v, f));
  });
  overlay(j, "nuclear_flip_prob", p, [&](const Json& v, const std::string& f) { n.nuclear_flip_prob = get_number(v, f); });
  overlay(j, "charge_good_prob", p, [&](const Json& v, const std::string& f) { n.charge_good_prob = get_number(v, f); });
  overlay(j, "plus_is_bright", p, [&](const Json& v, const std::string& f) {
    if (!v.is_boolean()) config_error(f, "expected true or false");
    n.plus_is_bright = v.get<bool>();
  });
  n.validate();
  return n;
}

RunConfig apply_config_json(const Json& j, RunConfig c) {
  if (!j.is_object()) config_error("config", "expected a JSON object at top level");
  reject_unknown(j, {"seed", "shots_per_term", "pair_order", "noise", "description"}, "");
  overlay(j, "seed", "", [&](const Json& v, const std::string& f) {
    if (!v.is_number_unsigned()) config_error(f, "expected a non-negative integer");
    c.seed = v.get<std::uint64_t>();
  });
  overlay(j, "shots_per_term", "", [&](const Json& v, const std::string& f) { c.shots_per_term = get_integer(v, f); });
  overlay(j, "pair_order", "", [&](const Json& v, const std::string& f) {
    if (!v.is_string()) config_error(f, "expected a string");
    c.pair_order = parse_pair_order(v.get<std::string>());
  });
  overlay(j, "noise", "", [&](const Json& v, const std::string&) { c.noise = apply_noise_json(v, c.noise); });
  c.validate();
  return c;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) config_error(path.string(), "cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    config_error(path.string(), std::string("invalid JSON: ") + e.what());
  }
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : detail::kEmbeddedPresets) names.emplace_back(name);
  return names;
}

std::string_view preset_text(std::string_view name) {
  for (const auto& [n, text] : detail::kEmbeddedPresets)
    if (n == name) return text;
  config_error("preset", "unknown preset '" + std::string(name) + "'");
}

RunConfig load_preset(std::string_view name) {
  const std::string_view text = preset_text(name);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    config_error("preset " + std::string(name), std::string("invalid JSON: ") + e.what());
  }
  return apply_config_json(j, RunConfig{});
}

std::optional<double> OutputRecord::value(std::string_view key) const {
  for (const auto& [k, v] : values)
    if (k == key) return v;
  return std::nullopt;
}

void to_json(Json& j, const OutputRecord& r) {
  Json terms = Json::array();
  for (const auto& t : r.terms)
    terms.push_back({{"term", t.term}, {"estimate", t.estimate}, {"stderr", t.std_error}, {"shots", t.shots}});
  Json values = Json::object();
  Json value_order = Json::array();
  for (const auto& [k, v] : r.values) {
    values[k] = v;
    value_order.push_back(k);
  }
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"deviation", c.deviation},
                      {"tolerance", c.tolerance},
                      {"detail", c.detail}});
  j = Json{{"command", r.command},
           {"arguments", r.arguments},
           {"config", r.config},
           {"seed", r.seed ? Json(*r.seed) : Json(nullptr)},
           {"terms", terms},
           {"values", values},
           {"value_order", value_order},
           {"checks", checks},
           {"details", r.details},
           {"status", r.ok ? "ok" : "error"},
           {"error", r.error},
           {"wall_clock_s", r.wall_clock_s}};
}

void from_json(const Json& j, OutputRecord& r) {
  r = OutputRecord{};
  r.command = j.at("command").get<std::string>();
  r.arguments = j.at("arguments").get<std::vector<std::string>>();
  r.config = j.at("config");
  if (!j.at("seed").is_null()) r.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& t : j.at("terms"))
    r.terms.push_back({t.at("term").get<std::string>(), t.at("estimate").get<double>(),
                       t.at("stderr").get<double>(), t.at("shots").get<std::int64_t>()});
  const Json& values = j.at("values");
  for (const auto& k : j.at("value_order")) {
    const auto key = k.get<std::string>();
    r.values.emplace_back(key, values.at(key).get<double>());
  }
  for (const auto& c : j.at("checks"))
    r.checks.push_back({c.at("name").get<std::string>(), c.at("passed").get<bool>(),
                        c.at("deviation").get<double>(), c.at("tolerance").get<double>(),
                        c.at("detail").get<std::string>()});
  r.details = j.at("details");
  r.ok = j.at("status").get<std::string>() == "ok";
  r.error = j.at("error").get<std::string>();
  r.wall_clock_s = j.at("wall_clock_s").get<double>();
}

std::string to_csv(const std::vector<TermRow>& rows) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "term,estimate,stderr,shots\n";
  for (const auto& r : rows) os << r.term << ',' << r.estimate << ',' << r.std_error << ',' << r.shots << '\n';
  return os.str();
}

}  // namespace kcbs
