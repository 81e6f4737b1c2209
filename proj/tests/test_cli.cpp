#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "kcbs/cli.hpp"

using namespace kcbs;

namespace {

struct CliRun {
  int code;
  Json out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  Json j;
  if (code == 0 || !out.str().empty()) j = Json::parse(out.str(), nullptr, false);
  return {code, j, err.str()};
}

Json strip_clock(Json j) {
  j.erase("wall_clock_s");
  return j;
}

}  // namespace

TEST(Cli, Exact) {
  const CliRun r = run({"exact"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out["status"], "ok");
  EXPECT_NEAR(r.out["values"]["kcbs_value"].get<double>(), std::sqrt(5.0), 1e-9);
  EXPECT_NEAR(r.out["values"]["modified_kcbs_value"].get<double>(), std::sqrt(5.0), 1e-9);
  EXPECT_EQ(r.out["values"]["nchv_bound"].get<double>(), 2.0);
  EXPECT_EQ(r.out["values"]["nchv_bound_modified"].get<double>(), 2.0);
  ASSERT_EQ(r.out["terms"].size(), kNumTerms);
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(r.out["terms"][i]["estimate"].get<double>(), 1 / std::sqrt(5.0), 1e-9);
  for (int i = 5; i < 10; ++i) EXPECT_NEAR(r.out["terms"][i]["estimate"].get<double>(), 0.0, 1e-12);
}

TEST(Cli, Validate) {
  const CliRun ok = run({"validate"});
  EXPECT_EQ(ok.code, 0);
  for (const auto& c : ok.out["checks"]) EXPECT_TRUE(c["passed"].get<bool>()) << c["name"];
  EXPECT_LT(ok.out["values"]["gram_equivalence"].get<double>(), 1e-10);

  const CliRun bad = run({"validate", "--gamma", std::to_string(std::acos(-0.5))});
  EXPECT_NE(bad.code, 0);
  EXPECT_EQ(bad.out["status"], "error");
  EXPECT_NE(bad.out["error"].get<std::string>().find("ClosureFailure"), std::string::npos);
  EXPECT_NE(bad.err.find("closure"), std::string::npos);
}

TEST(Cli, Spectrum) {
  const CliRun d = run({"spectrum"});
  ASSERT_EQ(d.code, 0);
  EXPECT_NEAR(d.out["values"]["f_low_MHz"].get<double>(), 3.2158, 1e-3);
  EXPECT_NEAR(d.out["values"]["f_high_MHz"].get<double>(), 6.6842, 1e-3);
  for (const auto& flags : {std::vector<std::string>{"spectrum", "--B", "0"},
                            std::vector<std::string>{"spectrum", "--gamma-n", "0"}}) {
    const CliRun r = run(flags);
    ASSERT_EQ(r.code, 0);
    EXPECT_DOUBLE_EQ(r.out["values"]["f_low_MHz"].get<double>(), 4.95);
    EXPECT_DOUBLE_EQ(r.out["values"]["f_high_MHz"].get<double>(), 4.95);
  }
  EXPECT_NE(run({"spectrum", "--B", "-3"}).code, 0);
}

TEST(Cli, SimulateDeterministicWithCsv) {
  const auto csv = std::filesystem::temp_directory_path() / "kcbs_cli_test.csv";
  const std::vector<std::string> args{"simulate", "--preset", "paper-2015", "--shots", "3000",
                                      "--seed", "11", "--csv", csv.string()};
  const CliRun a = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out["seed"], 11);
  EXPECT_EQ(a.out["config"]["shots_per_term"], 3000);
  CliRun b = run(args);
  EXPECT_EQ(strip_clock(a.out), strip_clock(b.out));
  std::vector<std::string> threaded = args;
  threaded.insert(threaded.end(), {"--threads", "3"});
  CliRun c = run(threaded);
  EXPECT_EQ(a.out["details"]["counts"], c.out["details"]["counts"]);

  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "term,estimate,stderr,shots");
  std::vector<std::string> names;
  while (std::getline(in, line)) names.push_back(line.substr(0, line.find(',')));
  EXPECT_EQ(names, std::vector<std::string>(term_names().begin(), term_names().end()));
  std::filesystem::remove(csv);
}

TEST(Cli, SimulateOverrides) {
  const auto cfg = std::filesystem::temp_directory_path() / "kcbs_cli_test.json";
  std::ofstream(cfg) << R"({"seed": 2, "shots_per_term": 500, "noise": {"init_error_prob": 0.2}})";
  const CliRun r = run({"simulate", "--preset", "ideal", "--config", cfg.string(), "--shots", "600",
                     "--pair-order", "reverse"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out["config"]["seed"], 2);
  EXPECT_EQ(r.out["config"]["shots_per_term"], 600);
  EXPECT_EQ(r.out["config"]["pair_order"], "reverse");
  EXPECT_DOUBLE_EQ(r.out["config"]["noise"]["init_error_prob"].get<double>(), 0.2);
  EXPECT_DOUBLE_EQ(r.out["config"]["noise"]["lambda_bright"].get<double>(), 200.0);

  std::ofstream(cfg) << R"({"noise": {"charge_good_prob": 0}})";
  const CliRun none = run({"simulate", "--preset", "ideal", "--config", cfg.string(), "--shots", "1"});
  EXPECT_NE(none.code, 0);
  EXPECT_NE(none.out["error"].get<std::string>().find("InsufficientData"), std::string::npos);

  std::ofstream(cfg) << R"({"noise": {"colour": 1}})";
  const CliRun badfield = run({"simulate", "--config", cfg.string()});
  EXPECT_NE(badfield.code, 0);
  EXPECT_NE(badfield.out["error"].get<std::string>().find("noise.colour"), std::string::npos);
  std::filesystem::remove(cfg);

  EXPECT_NE(run({"simulate", "--pair-order", "sideways"}).code, 0);
  EXPECT_NE(run({"simulate", "--preset", "missing"}).code, 0);
}

TEST(Cli, UsageErrors) {
  EXPECT_NE(run({}).code, 0);
  EXPECT_NE(run({"frobnicate"}).code, 0);
  EXPECT_NE(run({"exact", "--bogus"}).code, 0);
  EXPECT_EQ(run({"--help"}).code, 0);
}
