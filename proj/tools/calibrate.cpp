// Coarse grid search for the paper-2015 demonstration preset.
//
// Readout, depolarization and charge-state parameters are held at the values
// below; pulse-angle and initialization errors are scanned. Stage 1 estimates
// the mean modified inequality value of every grid point from a long run.
// Stage 2 sizes shots_per_term for a combined stderr near the target, then
// scores the candidates closest to the target value across the acceptance
// seeds and keeps the best one.
//
//   kcbs-calibrate --out presets    (rewrites paper-2015.json and the grid CSV)

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <vector>

#include <CLI11.hpp>

#include "kcbs/experiment.hpp"
#include "kcbs/io.hpp"

namespace {

constexpr double kTargetValue = 2.117;
// Slightly under the reported 0.015: keeps violation_sigma <= 10 across the
// value window while minimizing per-seed scatter.
constexpr double kTargetStderr = 0.014;
constexpr double kValueLo = 2.097;
constexpr double kValueHi = 2.137;
constexpr double kStderrLo = 0.012;
constexpr double kStderrHi = 0.018;
constexpr double kSigmaLo = 6.0;
constexpr double kSigmaHi = 10.0;

struct GridPoint {
  double pulse_std;
  double init_error;
  double mean_value = 0.0;
  double mean_stderr = 0.0;
  int passes = -1;
};

kcbs::NoiseModel base_noise() {
  kcbs::NoiseModel n;
  n.lambda_bright = 14.0;
  n.lambda_dark = 2.0;
  n.readout_threshold = 5;
  n.init_threshold = 3;
  n.nuclear_flip_prob = 0.01;
  n.charge_good_prob = 0.95;
  return n;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grid search for the paper-2015 noise preset", "kcbs-calibrate"};
  std::string out_dir = "presets";
  std::int64_t probe_shots = 100000;
  std::uint64_t probe_seed = 2015;
  int candidates = 10;
  std::uint64_t first_seed = 1;
  int num_seeds = 10;
  app.add_option("--out", out_dir, "Directory receiving paper-2015.json and paper-2015.grid.csv");
  app.add_option("--probe-shots", probe_shots, "Shots per sequence for the stage-1 mean estimate");
  app.add_option("--probe-seed", probe_seed);
  app.add_option("--candidates", candidates, "Grid points carried into stage 2");
  app.add_option("--first-seed", first_seed);
  app.add_option("--num-seeds", num_seeds);
  CLI11_PARSE(app, argc, argv);

  const std::vector<double> pulse_grid{0.0, 0.02, 0.04, 0.06};
  std::vector<double> init_grid;
  for (int k = 0; k <= 14; ++k) init_grid.push_back(0.005 * k);

  std::vector<GridPoint> grid;
  for (double p : pulse_grid)
    for (double i : init_grid) grid.push_back({p, i});

  double probe_stderr_sum = 0.0;
  for (auto& g : grid) {
    kcbs::RunConfig cfg;
    cfg.seed = probe_seed;
    cfg.shots_per_term = probe_shots;
    cfg.noise = base_noise();
    cfg.noise.pulse_angle_error_std = g.pulse_std;
    cfg.noise.init_error_prob = g.init_error;
    const auto r = kcbs::run_protocol(cfg);
    g.mean_value = r.inequality_value;
    probe_stderr_sum += r.inequality_stderr;
    std::fprintf(stderr, "stage1 pulse=%.3f init=%.3f value=%.5f\n", g.pulse_std, g.init_error, r.inequality_value);
  }

  // Stderr scales as 1/sqrt(n) and barely moves across the grid.
  const double probe_stderr = probe_stderr_sum / static_cast<double>(grid.size());
  const double ratio = probe_stderr / kTargetStderr;
  const auto shots = static_cast<std::int64_t>(std::llround(probe_shots * ratio * ratio / 100.0) * 100);

  std::vector<GridPoint*> order;
  for (auto& g : grid) order.push_back(&g);
  std::sort(order.begin(), order.end(), [](const GridPoint* a, const GridPoint* b) {
    return std::abs(a->mean_value - kTargetValue) < std::abs(b->mean_value - kTargetValue);
  });

  GridPoint* best = nullptr;
  for (int c = 0; c < std::min<int>(candidates, static_cast<int>(order.size())); ++c) {
    GridPoint& g = *order[static_cast<std::size_t>(c)];
    g.passes = 0;
    double se_sum = 0.0;
    for (int s = 0; s < num_seeds; ++s) {
      kcbs::RunConfig cfg;
      cfg.seed = first_seed + static_cast<std::uint64_t>(s);
      cfg.shots_per_term = shots;
      cfg.noise = base_noise();
      cfg.noise.pulse_angle_error_std = g.pulse_std;
      cfg.noise.init_error_prob = g.init_error;
      const auto r = kcbs::run_protocol(cfg);
      se_sum += r.inequality_stderr;
      const bool ok = r.inequality_value >= kValueLo && r.inequality_value <= kValueHi &&
                      r.inequality_stderr >= kStderrLo && r.inequality_stderr <= kStderrHi &&
                      r.violation_sigma >= kSigmaLo && r.violation_sigma <= kSigmaHi;
      g.passes += ok ? 1 : 0;
      if (!ok)
        std::fprintf(stderr, "  seed %llu miss: value=%.4f stderr=%.4f sigma=%.2f\n",
                     static_cast<unsigned long long>(cfg.seed), r.inequality_value, r.inequality_stderr,
                     r.violation_sigma);
    }
    g.mean_stderr = se_sum / num_seeds;
    std::fprintf(stderr, "stage2 pulse=%.3f init=%.3f passes=%d/%d\n", g.pulse_std, g.init_error, g.passes, num_seeds);
    if (best == nullptr || g.passes > best->passes) best = &g;
    if (best->passes == num_seeds) break;
  }

  {
    std::ofstream csv(out_dir + "/paper-2015.grid.csv");
    csv << std::setprecision(10);
    csv << "# probe_shots=" << probe_shots << " probe_seed=" << probe_seed << " preset_shots=" << shots
        << " seeds=" << first_seed << ".." << first_seed + num_seeds - 1 << "\n";
    csv << "pulse_angle_error_std,init_error_prob,probe_value,seed_passes,mean_stderr\n";
    for (const auto& g : grid)
      csv << g.pulse_std << ',' << g.init_error << ',' << g.mean_value << ',' << g.passes << ','
          << g.mean_stderr << '\n';
  }

  kcbs::RunConfig preset;
  preset.seed = 7;
  preset.shots_per_term = shots;
  preset.noise = base_noise();
  preset.noise.pulse_angle_error_std = best->pulse_std;
  preset.noise.init_error_prob = best->init_error;
  kcbs::Json j = kcbs::to_json(preset);
  j["description"] =
      "Demonstration noise model reproducing a modified inequality value near 2.117 +- 0.015. "
      "Produced by kcbs-calibrate (see paper-2015.grid.csv); not a claim of physical fidelity.";
  std::ofstream(out_dir + "/paper-2015.json") << j.dump(2) << '\n';

  std::cout << "selected pulse_angle_error_std=" << best->pulse_std << " init_error_prob=" << best->init_error
            << " shots_per_term=" << shots << " probe_value=" << best->mean_value << " passes=" << best->passes
            << "/" << num_seeds << '\n';
  return 0;
}
