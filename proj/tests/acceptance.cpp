// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Criteria run through the same entry points as the executable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "kcbs/cli.hpp"
#include "kcbs/error.hpp"
#include "kcbs/inequality.hpp"
#include "kcbs/pentagram.hpp"

using namespace kcbs;

namespace {

const double sqrt5 = std::sqrt(5.0);

struct Verdict {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Json cli(const std::vector<std::string>& args, int& code) {
  std::ostringstream out, err;
  code = run_cli(args, out, err);
  return Json::parse(out.str());
}

Verdict exact_value() {
  const auto t0 = std::chrono::steady_clock::now();
  int code = 0;
  const Json j = cli({"exact"}, code);
  const double dt = seconds_since(t0);
  const double v = j["values"]["kcbs_value"].get<double>();
  const double dev = std::abs(v - sqrt5);
  return {code == 0 && dev < 1e-9 && dt < 1.0, fmt("value=%.15f |dev|=%.2e runtime=%.3fs", v, dev, dt)};
}

Verdict exact_terms_check() {
  int code = 0;
  const Json j = cli({"exact"}, code);
  double single_dev = 0, pair_dev = 0;
  for (int i = 0; i < 5; ++i) {
    single_dev = std::max(single_dev, std::abs(j["terms"][i]["estimate"].get<double>() - 1 / sqrt5));
    pair_dev = std::max(pair_dev, std::abs(j["terms"][i + 5]["estimate"].get<double>()));
  }
  return {code == 0 && single_dev < 1e-9 && pair_dev < 1e-12,
          fmt("max|single-1/sqrt5|=%.2e max|pair|=%.2e", single_dev, pair_dev)};
}

Verdict classical_bounds() {
  const auto t0 = std::chrono::steady_clock::now();
  const int plain = nchv_bound().max_value;
  const int modified = nchv_bound_modified();
  const double dt = seconds_since(t0);
  return {plain == 2 && modified == 2 && dt < 1.0,
          fmt("plain=%d modified=%d runtime=%.4fs", plain, modified, dt)};
}

Verdict construction() {
  const Quintuplet q = build_pulse_quintuplet();
  const CartesianPentagram c = build_cartesian_quintuplet();
  const double orth = max_adjacent_overlap(q);
  const double closure = closure_defect(q);
  const double g = max_abs_difference(gram(std::span(q.states).first(5)),
                                      gram(std::span(c.quintuplet.states).first(5)));
  int code = 0;
  cli({"validate"}, code);
  return {orth < 1e-10 && closure < 1e-10 && g < 1e-10 && code == 0,
          fmt("adjacent=%.2e closure=%.2e gram=%.2e validate_exit=%d", orth, closure, g, code)};
}

Verdict convention() {
  const double gamma = angles().gamma;
  const double at = closure_defect(pulse_quintuplet(gamma));
  const double lo = closure_defect(pulse_quintuplet(gamma - 0.01));
  const double hi = closure_defect(pulse_quintuplet(gamma + 0.01));
  // Defect is |1 - |<l6|l1>||, the closure measure of criterion 4. It is
  // second order in the offset; 1 - |<l6|l1>|^2 is shown for reference.
  const double fid_lo = 1.0 - std::pow(1.0 - lo, 2);
  const double fid_hi = 1.0 - std::pow(1.0 - hi, 2);
  return {at < 1e-10 && lo > 1e-4 && hi > 1e-4,
          fmt("defect(gamma)=%.2e defect(gamma-0.01)=%.2e defect(gamma+0.01)=%.2e threshold=1e-4 "
              "(infidelity %.2e / %.2e)",
              at, lo, hi, fid_lo, fid_hi)};
}

Verdict monte_carlo() {
  const auto t0 = std::chrono::steady_clock::now();
  int code = 0;
  const Json j = cli({"simulate", "--preset", "ideal", "--shots", "100000"}, code);
  const double dt = seconds_since(t0);
  const double v = j["values"]["inequality_value"].get<double>();
  const double se = j["values"]["inequality_stderr"].get<double>();
  const double z = std::abs(v - sqrt5) / se;

  int c1 = 0, c4 = 0;
  const double se1 = cli({"simulate", "--preset", "ideal", "--shots", "10000"}, c1)["values"]["inequality_stderr"];
  const double se4 = cli({"simulate", "--preset", "ideal", "--shots", "40000"}, c4)["values"]["inequality_stderr"];
  const double ratio = se1 / se4;
  const bool scaling = std::abs(ratio / 2.0 - 1.0) < 0.2;
  return {code == 0 && c1 == 0 && c4 == 0 && z < 5.0 && scaling && dt < 60.0,
          fmt("value=%.5f stderr=%.5f |dev|/se=%.2f se(1e4)/se(4e4)=%.3f runtime=%.2fs", v, se, z, ratio, dt)};
}

Verdict calibration() {
  bool all = true;
  std::string worst;
  double vmin = INFINITY, vmax = -INFINITY, smin = INFINITY, smax = -INFINITY, zmin = INFINITY, zmax = -INFINITY;
  for (int seed = 1; seed <= 10; ++seed) {
    int code = 0;
    const Json j = cli({"simulate", "--preset", "paper-2015", "--seed", std::to_string(seed)}, code);
    const double v = j["values"]["inequality_value"].get<double>();
    const double se = j["values"]["inequality_stderr"].get<double>();
    const double z = j["values"]["violation_sigma"].get<double>();
    vmin = std::min(vmin, v), vmax = std::max(vmax, v);
    smin = std::min(smin, se), smax = std::max(smax, se);
    zmin = std::min(zmin, z), zmax = std::max(zmax, z);
    const bool ok = code == 0 && v >= 2.097 && v <= 2.137 && se >= 0.012 && se <= 0.018 && z >= 6 && z <= 10;
    if (!ok) worst += fmt(" seed%d(v=%.4f se=%.4f sigma=%.2f)", seed, v, se, z);
    all = all && ok;
  }
  return {all, fmt("seeds 1..10 value=[%.4f, %.4f] stderr=[%.4f, %.4f] sigma=[%.2f, %.2f]", vmin, vmax, smin,
                   smax, zmin, zmax) + worst};
}

Verdict spectrum() {
  int code = 0;
  const Json j = cli({"spectrum"}, code);
  const double lo = j["values"]["f_low_MHz"].get<double>();
  const double hi = j["values"]["f_high_MHz"].get<double>();
  return {code == 0 && std::abs(lo - 3.2158) < 1e-3 && std::abs(hi - 6.6842) < 1e-3,
          fmt("f_low=%.6f MHz f_high=%.6f MHz", lo, hi)};
}

Verdict determinism() {
  bool same = true;
  std::string detail;
  for (const char* preset : {"ideal", "paper-2015"}) {
    const std::vector<std::string> base{"simulate", "--preset", preset, "--seed", "4242", "--shots", "5000"};
    Json ref;
    for (const char* threads : {"1", "2", "4", "0"}) {
      std::vector<std::string> args = base;
      args.insert(args.end(), {"--threads", threads});
      int code = 0;
      const Json j = cli(args, code);
      if (ref.is_null()) ref = j;
      same = same && code == 0 && j["details"]["counts"] == ref["details"]["counts"] &&
             j["values"] == ref["values"];
    }
    RunConfig c = load_preset(preset);
    c.seed = 4242;
    c.shots_per_term = 5000;
    same = same && count_shots_serial(c) == count_shots_parallel(c, 4);
    detail += std::string(preset) + " ";
  }
  return {same, detail + "counts identical for threads {1,2,4,default} and the serial kernel"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"exact quantum value", exact_value},
      {"exact singles and pairs", exact_terms_check},
      {"classical bounds", classical_bounds},
      {"construction validity", construction},
      {"convention certification", convention},
      {"Monte Carlo consistency", monte_carlo},
      {"paper-2015 calibration", calibration},
      {"spectrum arithmetic", spectrum},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += v.pass ? 0 : 1;
    std::printf("[%s] %zu. %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
