#pragma once

// Command implementations behind the `kcbs` executable. Each returns the
// record printed on standard output; run_cli wires them to argv.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kcbs/experiment.hpp"
#include "kcbs/io.hpp"

namespace kcbs {

OutputRecord cmd_exact();

// gamma_override replaces arccos(2 - sqrt5) in the pulse construction.
OutputRecord cmd_validate(std::optional<double> gamma_override = std::nullopt);

struct SimulateOptions {
  std::optional<std::string> preset;
  std::optional<std::string> config_path;
  std::optional<std::string> csv_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> shots;
  std::optional<PairOrder> pair_order;
  int threads = 0;
};

// Defaults, then preset, then config file, then flags.
RunConfig resolve_run_config(const SimulateOptions& opts);
OutputRecord cmd_simulate(const SimulateOptions& opts);

OutputRecord cmd_spectrum(const NvParameters& params);

// Returns the process exit code: 0 iff the command succeeded and every check
// passed.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kcbs
