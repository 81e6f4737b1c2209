#pragma once

// JSON configuration, named presets, and the machine-readable output record.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "kcbs/experiment.hpp"

namespace kcbs {

using Json = nlohmann::json;

std::string to_string(PairOrder order);
// "forward" | "reverse"; throws ConfigError.
PairOrder parse_pair_order(std::string_view text);

Json to_json(const NoiseModel& noise);
Json to_json(const RunConfig& config);

// Overlays the fields present in `j` onto `base`. Unknown keys and type
// mismatches throw ConfigError naming the field. The result is validated.
NoiseModel apply_noise_json(const Json& j, NoiseModel base);
RunConfig apply_config_json(const Json& j, RunConfig base);

Json read_json_file(const std::filesystem::path& path);

std::vector<std::string> preset_names();
// Raw JSON text shipped in presets/<name>.json; throws ConfigError.
std::string_view preset_text(std::string_view name);
RunConfig load_preset(std::string_view name);

struct TermRow {
  std::string term;
  double estimate = 0.0;
  double std_error = 0.0;
  std::int64_t shots = 0;

  friend bool operator==(const TermRow&, const TermRow&) = default;
};

struct CheckRow {
  std::string name;
  bool passed = false;
  double deviation = 0.0;
  double tolerance = 0.0;
  std::string detail;

  friend bool operator==(const CheckRow&, const CheckRow&) = default;
};

struct OutputRecord {
  std::string command;
  std::vector<std::string> arguments;
  Json config;                         // resolved run configuration, null if none
  std::optional<std::uint64_t> seed;
  std::vector<TermRow> terms;
  std::vector<std::pair<std::string, double>> values;  // ordered scalar results
  std::vector<CheckRow> checks;
  Json details;                        // command-specific structured data
  bool ok = true;
  std::string error;
  double wall_clock_s = 0.0;

  std::optional<double> value(std::string_view key) const;
  friend bool operator==(const OutputRecord&, const OutputRecord&) = default;
};

void to_json(Json& j, const OutputRecord& r);
void from_json(const Json& j, OutputRecord& r);

// term,estimate,stderr,shots with 17 significant digits.
std::string to_csv(const std::vector<TermRow>& rows);

}  // namespace kcbs
