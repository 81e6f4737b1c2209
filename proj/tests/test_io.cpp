#include <cmath>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "kcbs/error.hpp"
#include "kcbs/io.hpp"

using namespace kcbs;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no kcbs::Error thrown";
  return ErrorKind::ValidationFailed;
}

std::string error_text(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(PairOrder, Parse) {
  EXPECT_EQ(parse_pair_order("forward"), PairOrder::Forward);
  EXPECT_EQ(parse_pair_order("reverse"), PairOrder::Reverse);
  EXPECT_EQ(kind_of([] { parse_pair_order("backward"); }), ErrorKind::ConfigError);
  EXPECT_EQ(to_string(PairOrder::Reverse), "reverse");
}

TEST(Config, RoundTrip) {
  RunConfig c;
  c.seed = 123;
  c.shots_per_term = 777;
  c.pair_order = PairOrder::Reverse;
  c.noise.pulse_angle_error_std = 0.02;
  c.noise.plus_is_bright = false;
  const RunConfig back = apply_config_json(to_json(c), RunConfig{});
  EXPECT_EQ(to_json(back), to_json(c));
}

TEST(Config, OverlayKeepsUnsetFields) {
  RunConfig base;
  base.seed = 5;
  base.noise.lambda_bright = 20;
  const RunConfig c = apply_config_json(Json::parse(R"({"noise": {"lambda_dark": 1.5}})"), base);
  EXPECT_EQ(c.seed, 5u);
  EXPECT_DOUBLE_EQ(c.noise.lambda_bright, 20);
  EXPECT_DOUBLE_EQ(c.noise.lambda_dark, 1.5);
}

TEST(Config, Errors) {
  const auto bad = [](const char* text) {
    return error_text([&] { apply_config_json(Json::parse(text), RunConfig{}); });
  };
  EXPECT_NE(bad(R"({"sed": 1})").find("sed: unknown field"), std::string::npos);
  EXPECT_NE(bad(R"({"noise": {"lambda": 1}})").find("noise.lambda"), std::string::npos);
  EXPECT_NE(bad(R"({"shots_per_term": "many"})").find("shots_per_term"), std::string::npos);
  EXPECT_NE(bad(R"({"shots_per_term": 0})").find("shots_per_term"), std::string::npos);
  EXPECT_NE(bad(R"({"seed": -1})").find("seed"), std::string::npos);
  EXPECT_NE(bad(R"({"noise": {"charge_good_prob": 2}})").find("charge_good_prob"), std::string::npos);
  EXPECT_NE(bad(R"({"noise": {"plus_is_bright": 1}})").find("plus_is_bright"), std::string::npos);
  EXPECT_NE(bad(R"([1, 2])").find("config"), std::string::npos);
  EXPECT_EQ(kind_of([] { apply_config_json(Json::parse(R"({"pair_order": "up"})"), RunConfig{}); }),
            ErrorKind::ConfigError);
}

TEST(Config, ReadFile) {
  const auto path = std::filesystem::temp_directory_path() / "kcbs_test_config.json";
  std::ofstream(path) << R"({"seed": 9, "noise": {"init_error_prob": 0.1}})";
  const RunConfig c = apply_config_json(read_json_file(path), RunConfig{});
  EXPECT_EQ(c.seed, 9u);
  EXPECT_DOUBLE_EQ(c.noise.init_error_prob, 0.1);
  std::ofstream(path) << "{ not json";
  EXPECT_EQ(kind_of([&] { read_json_file(path); }), ErrorKind::ConfigError);
  std::filesystem::remove(path);
  EXPECT_EQ(kind_of([&] { read_json_file(path); }), ErrorKind::ConfigError);
}

TEST(Presets, Load) {
  const auto names = preset_names();
  ASSERT_EQ(names.size(), 2u);
  EXPECT_EQ(names[0], "ideal");
  EXPECT_EQ(names[1], "paper-2015");
  const RunConfig ideal = load_preset("ideal");
  EXPECT_DOUBLE_EQ(ideal.noise.pulse_angle_error_std, 0.0);
  EXPECT_DOUBLE_EQ(ideal.noise.nuclear_flip_prob, 0.0);
  const auto c = readout_confusion(ideal.noise);
  EXPECT_LT(c.plus_read_as_0 + c.rest_read_as_1, 1e-12);
  const RunConfig calibrated = load_preset("paper-2015");
  EXPECT_EQ(calibrated.seed, 7u);
  EXPECT_GT(calibrated.noise.init_error_prob, 0.0);
  EXPECT_EQ(kind_of([] { load_preset("nope"); }), ErrorKind::ConfigError);
}

TEST(OutputRecord, JsonRoundTrip) {
  OutputRecord r;
  r.command = "simulate";
  r.arguments = {"simulate", "--seed", "3"};
  r.config = to_json(RunConfig{});
  r.seed = 18446744073709551615ULL;
  r.terms = {{"L1", 0.1 + 0.2, 1.0 / 3.0, 10}, {"L1L2", std::nextafter(1.0, 0.0), 1e-300, 1}};
  r.values = {{"z_last_alpha", 2.2360679774997896}, {"a_first", -0.0}, {"tiny", 4.9e-324}};
  r.checks = {{"closure", true, 1.1e-16, 1e-10, "ok"}};
  r.details = Json{{"kept_shots", 5}};
  r.ok = false;
  r.error = "InsufficientData: term 0";
  r.wall_clock_s = 0.25;

  const std::string text = Json(r).dump();
  const OutputRecord back = Json::parse(text).get<OutputRecord>();
  EXPECT_EQ(back, r);
  EXPECT_EQ(back.values.front().first, "z_last_alpha");
  EXPECT_EQ(back.value("tiny"), 4.9e-324);
  EXPECT_FALSE(back.value("missing"));

  OutputRecord plain;
  plain.command = "exact";
  EXPECT_EQ(Json::parse(Json(plain).dump()).get<OutputRecord>(), plain);
}

TEST(OutputRecord, Csv) {
  const std::vector<TermRow> rows{{"L1", 0.1, 0.01, 100}, {"L1pL1", 1.0 / 3.0, 0.0, 7}};
  const std::string csv = to_csv(rows);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "term,estimate,stderr,shots");
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 3), "L1,");
  std::getline(in, line);
  EXPECT_EQ(line, "L1pL1,0.33333333333333331,0,7");
}
