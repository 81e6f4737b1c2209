#include "kcbs/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "kcbs/error.hpp"
#include "kcbs/inequality.hpp"
#include "kcbs/pentagram.hpp"
#include "kcbs/validation.hpp"

namespace kcbs {

namespace {

std::vector<CheckRow> to_rows(const std::vector<Check>& checks) {
  std::vector<CheckRow> rows;
  for (const auto& c : checks) rows.push_back({c.name, c.passed, c.deviation, c.tolerance, c.detail});
  return rows;
}

std::vector<TermRow> exact_rows(const TermSet& t) {
  std::vector<TermRow> rows;
  const auto flat = t.flat();
  for (std::size_t i = 0; i < kNumTerms; ++i) rows.push_back({term_names()[i], flat[i], 0.0, 0});
  return rows;
}

}  // namespace

OutputRecord cmd_exact() {
  OutputRecord rec;
  rec.command = "exact";
  const auto checks = validate_construction();
  rec.checks = to_rows(checks);
  if (const Check* bad = first_failure(checks)) {
    rec.ok = false;
    rec.error = "ValidationFailed: " + bad->name;
    return rec;
  }

  const TermSet t = exact_terms(build_psi0(), build_pulse_quintuplet());
  const NchvBound bound = nchv_bound();
  rec.terms = exact_rows(t);
  rec.values = {{"kcbs_value", kcbs_value(t)},
                {"modified_kcbs_value", modified_kcbs_value(t)},
                {"quantum_reference", std::sqrt(5.0)},
                {"nchv_bound", static_cast<double>(bound.max_value)},
                {"nchv_bound_modified", static_cast<double>(nchv_bound_modified())}};
  const auto& a = angles();
  rec.details = Json{{"angles", {{"gamma", a.gamma}, {"theta", a.theta}, {"phi", a.phi}}},
                     {"nchv_maximizers", bound.maximizers}};
  return rec;
}

OutputRecord cmd_validate(std::optional<double> gamma_override) {
  OutputRecord rec;
  rec.command = "validate";
  const auto checks = validate_construction(gamma_override);
  rec.checks = to_rows(checks);
  for (const auto& c : checks) rec.values.emplace_back(c.name, c.deviation);
  if (gamma_override) rec.details = Json{{"gamma", *gamma_override}};
  if (const Check* bad = first_failure(checks)) {
    rec.ok = false;
    const std::string kind = bad->name == "closure"           ? "ClosureFailure"
                             : bad->name == "psi0_agreement"   ? "ConventionMismatch"
                             : bad->name == "measurement_plans" ? "PlanMismatch"
                                                                : "ValidationFailed";
    rec.error = kind + ": check '" + bad->name + "' failed";
  }
  return rec;
}

RunConfig resolve_run_config(const SimulateOptions& opts) {
  RunConfig cfg;
  if (opts.preset) cfg = load_preset(*opts.preset);
  if (opts.config_path) cfg = apply_config_json(read_json_file(*opts.config_path), cfg);
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.shots) cfg.shots_per_term = *opts.shots;
  if (opts.pair_order) cfg.pair_order = *opts.pair_order;
  cfg.validate();
  return cfg;
}

OutputRecord cmd_simulate(const SimulateOptions& opts) {
  OutputRecord rec;
  rec.command = "simulate";
  const RunConfig cfg = resolve_run_config(opts);
  rec.config = to_json(cfg);
  rec.seed = cfg.seed;

  const ExperimentResult r = run_protocol(cfg, opts.threads);
  const auto means = r.terms.flat();
  const auto errs = r.term_stderr.flat();
  for (std::size_t i = 0; i < kNumTerms; ++i)
    rec.terms.push_back({term_names()[i], means[i], errs[i], r.counts[i].shots});
  rec.values = {{"inequality_value", r.inequality_value},
                {"inequality_stderr", r.inequality_stderr},
                {"violation_sigma", r.violation_sigma},
                {"kcbs_value", r.plain_value},
                {"nchv_bound", 2.0},
                {"quantum_reference", std::sqrt(5.0)}};
  Json counts = Json::array();
  for (std::size_t i = 0; i < kNumTerms; ++i)
    counts.push_back({{"term", term_names()[i]}, {"hits", r.counts[i].hits}, {"shots", r.counts[i].shots}});
  rec.details = Json{{"kept_shots", r.kept_shots}, {"discarded_shots", r.discarded_shots}, {"counts", counts}};

  if (opts.csv_path) {
    std::ofstream csv(*opts.csv_path);
    if (!csv) throw Error(ErrorKind::ConfigError, "csv: cannot write " + *opts.csv_path);
    csv << to_csv(rec.terms);
  }
  return rec;
}

OutputRecord cmd_spectrum(const NvParameters& params) {
  OutputRecord rec;
  rec.command = "spectrum";
  const TransitionFrequencies f = nmr_frequencies(params);
  rec.config = Json{{"Q_MHz", params.q_mhz},
                    {"gamma_n_kHz_per_G", params.gamma_n_khz_per_gauss},
                    {"B_G", params.b_gauss}};
  rec.values = {{"f_low_MHz", f.low_mhz},
                {"f_high_MHz", f.high_mhz},
                {"zeeman_MHz", params.gamma_n_khz_per_gauss * params.b_gauss / 1000.0}};
  return rec;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Qutrit KCBS contextuality: exact evaluation and protocol simulation", "kcbs"};
  app.require_subcommand(1);

  auto* exact = app.add_subcommand("exact", "Exact quantum terms, inequality values and NCHV bounds");

  auto* validate = app.add_subcommand("validate", "Check the pentagram constructions and measurement plans");
  std::optional<double> gamma_override;
  validate->add_option("--gamma", gamma_override, "Override the pulse angle (test hook)")->group("");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo run of the sequential measurement protocol");
  SimulateOptions sim;
  std::optional<std::string> pair_order_text;
  simulate->add_option("--preset", sim.preset, "Named preset: " + CLI::detail::join(preset_names()));
  simulate->add_option("--config", sim.config_path, "JSON config file, applied over the preset");
  simulate->add_option("--seed", sim.seed, "RNG seed");
  simulate->add_option("--shots", sim.shots, "Attempted shots per measurement sequence");
  simulate->add_option("--csv", sim.csv_path, "Write the per-term table to this path");
  simulate->add_option("--pair-order", pair_order_text, "forward | reverse");
  simulate->add_option("--threads", sim.threads, "OpenMP threads (0 = default); results do not depend on it");

  auto* spectrum = app.add_subcommand("spectrum", "Nuclear spin transition frequencies");
  NvParameters nv;
  spectrum->add_option("--Q", nv.q_mhz, "Quadrupole splitting [MHz]")->capture_default_str();
  spectrum->add_option("--gamma-n", nv.gamma_n_khz_per_gauss, "Gyromagnetic ratio [kHz/G]")->capture_default_str();
  spectrum->add_option("--B", nv.b_gauss, "Magnetic field [G]")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  OutputRecord rec;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (*exact) {
      rec = cmd_exact();
    } else if (*validate) {
      rec = cmd_validate(gamma_override);
    } else if (*simulate) {
      if (pair_order_text) sim.pair_order = parse_pair_order(*pair_order_text);
      rec = cmd_simulate(sim);
    } else if (*spectrum) {
      rec = cmd_spectrum(nv);
    }
  } catch (const Error& e) {
    rec.command = app.get_subcommands().front()->get_name();
    rec.ok = false;
    rec.error = e.what();
  }
  rec.arguments = args;
  rec.wall_clock_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  Json j = rec;
  out << j.dump(2) << '\n';
  if (!rec.ok) err << "kcbs " << rec.command << ": " << rec.error << '\n';
  return rec.ok ? 0 : 1;
}

}  // namespace kcbs
