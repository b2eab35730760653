#include "swarmagg/io.hpp"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "swarmagg/dynamics.hpp"
#include "swarmagg/errors.hpp"
#include "test_support.hpp"

namespace swarmagg {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "swarmagg_io_test";
  fs::create_directories(dir);
  return dir / name;
}

Trajectory random_trajectory(testing::Gen& gen, std::size_t m, std::size_t n, std::size_t steps) {
  const auto p = gen.validated_params(m, n);
  auto t = simulate(gen.state(m, n, 5.0), p, steps, StopCriteria{-1.0, {}});
  t.seed = 0xFFFFFFFFFFFFFFF1ULL;
  t.init = InitSpec{"uniform_hypercube", 5.0, "xoshiro256starstar-splitmix64"};
  return t;
}

bool bit_equal(const std::vector<SwarmState>& a, const std::vector<SwarmState>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].step() != b[k].step() || a[k].dim() != b[k].dim()) return false;
    const auto x = a[k].coords();
    const auto y = b[k].coords();
    if (x.size() != y.size() || std::memcmp(x.data(), y.data(), x.size() * sizeof(double)) != 0) {
      return false;
    }
  }
  return true;
}

TEST(TrajectoryCsvTest, HeaderAndRowLayout) {
  const auto p = SwarmParams::create(0.1, 0.5, 1.0, 1, 1);
  const auto t = simulate(SwarmState(0, 1, {0.25}), p, 1, StopCriteria{-1.0, {}});
  std::ostringstream out;
  write_trajectory_csv(t, out);
  EXPECT_EQ(out.str(), "step,agent,x0\n0,0,0.25\n1,0,0.25\n");
}

TEST(TrajectoryCsvTest, SeventeenSignificantDigits) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(-2.0), "-2");
  EXPECT_EQ(format_double(1.0 / 3.0), "0.33333333333333331");
}

TEST(TrajectoryCsvTest, RowCountIsStepsPlusOneTimesAgents) {
  testing::Gen gen(12);
  const auto t = random_trajectory(gen, 7, 3, 25);
  std::ostringstream out;
  write_trajectory_csv(t, out);
  const auto text = out.str();
  EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')), 1 + 26 * 7);
  EXPECT_EQ(text.substr(0, text.find('\n')), "step,agent,x0,x1,x2");
}

TEST(TrajectoryRoundTripTest, CsvAndJsonAreBitExact) {
  testing::Gen gen(13);
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = random_trajectory(gen, gen.index(1, 8), gen.index(1, 3), gen.index(0, 30));

    const auto csv = scratch("rt.csv");
    export_trajectory(t, csv, OutputFormat::csv);
    EXPECT_TRUE(bit_equal(read_trajectory_csv(csv), t.states));

    const auto json = scratch("rt.json");
    export_trajectory(t, json, OutputFormat::json);
    const auto back = read_trajectory_json(json);
    EXPECT_EQ(back, t);
    EXPECT_TRUE(bit_equal(back.states, t.states));
  }
}

TEST(TrajectoryRoundTripTest, ExtremeValuesSurvive) {
  const auto p = SwarmParams::create(0.1, 0.5, 1.0, 3, 1);
  Trajectory t{.params = p, .seed = 1, .init = {}, .states = {}};
  t.states.emplace_back(0, 1, std::vector<double>{-0.0, 5e-324, 1.7976931348623157e308});
  std::ostringstream csv, json;
  write_trajectory_csv(t, csv);
  write_trajectory_json(t, json);
  EXPECT_TRUE(bit_equal(parse_trajectory_csv(csv.str()), t.states));
  EXPECT_TRUE(bit_equal(parse_trajectory_json(json.str()).states, t.states));
}

TEST(TrajectoryJsonTest, Layout) {
  testing::Gen gen(14);
  const auto t = random_trajectory(gen, 2, 2, 3);
  std::ostringstream out;
  write_trajectory_json(t, out);
  const auto doc = nlohmann::json::parse(out.str());
  EXPECT_EQ(doc["schema_version"], kTrajectorySchemaVersion);
  EXPECT_EQ(doc["provenance"]["seed"].get<std::uint64_t>(), 0xFFFFFFFFFFFFFFF1ULL);
  EXPECT_EQ(doc["provenance"]["prng"], "xoshiro256starstar-splitmix64");
  EXPECT_EQ(doc["provenance"]["init"]["kind"], "uniform_hypercube");
  EXPECT_EQ(doc["states"].size(), 4u);
  EXPECT_EQ(doc["states"][2]["k"], 2);
  EXPECT_EQ(doc["states"][2]["positions"].size(), 2u);
  EXPECT_EQ(doc["termination_reason"], "max_steps");
}

TEST(TrajectoryParseTest, RejectsMalformedInput) {
  EXPECT_THROW(parse_trajectory_csv(""), ConfigError);
  EXPECT_THROW(parse_trajectory_csv("k,agent,x0\n0,0,1\n"), ConfigError);
  EXPECT_THROW(parse_trajectory_csv("step,agent,x0\n1,0,1\n"), ConfigError);
  EXPECT_THROW(parse_trajectory_csv("step,agent,x0\n0,0,1\n2,0,1\n"), ConfigError);
  EXPECT_THROW(parse_trajectory_csv("step,agent,x0\n0,1,1\n"), ConfigError);
  EXPECT_THROW(parse_trajectory_csv("step,agent,x0\n0,0,abc\n"), ConfigError);
  EXPECT_THROW(parse_trajectory_csv("step,agent,x0\n0,0,1,2\n"), ConfigError);
  EXPECT_THROW(parse_trajectory_csv("step,agent,x0\n0,0,1\n0,1,2\n1,0,1\n"), ConfigError);
  EXPECT_THROW(parse_trajectory_json("{}"), ConfigError);
  EXPECT_THROW(parse_trajectory_json("not json"), ConfigError);
}

TEST(ExportTest, UnwritablePathCarriesPath) {
  testing::Gen gen(15);
  const auto t = random_trajectory(gen, 2, 1, 1);
  const fs::path bad = "/nonexistent-swarmagg-dir/out.csv";
  try {
    export_trajectory(t, bad, OutputFormat::csv);
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_EQ(e.path(), bad);
    EXPECT_NE(std::string(e.what()).find("nonexistent-swarmagg-dir"), std::string::npos);
  }
  EXPECT_THROW(read_trajectory_json(bad), IoError);
}

TEST(ReportJsonTest, BoundsBlockForUnitDelta) {
  const auto p = SwarmParams::create(1.0, std::numbers::e, 1.0, 1, 1);
  const auto report = analyze(simulate(SwarmState(0, 1, {0.0}), p, 3));
  const auto doc = nlohmann::json::parse(report_to_json(report));
  EXPECT_NEAR(doc["bounds"]["delta"].get<double>(), 1.0, 1e-15);
  EXPECT_EQ(doc["bounds"]["k_bar"], 0);
}

TEST(ReportJsonTest, TrivialRunIsAllPassWithZeroResiduals) {
  const auto p = SwarmParams::create(0.01, 0.5, 1.0, 3, 2);
  const auto t = simulate(SwarmState(0, 2, {1, 1, 1, 1, 1, 1}), p, 5, StopCriteria{-1.0, {}});
  const auto path = scratch("report.json");
  emit_report(analyze(t), path);
  std::ifstream in(path);
  const auto doc = nlohmann::json::parse(in);
  EXPECT_EQ(doc["schema_version"], kReportSchemaVersion);
  for (const auto& v : doc["verdicts"]) {
    EXPECT_TRUE(v["pass"].get<bool>()) << v["name"];
    EXPECT_TRUE(v["evidence_step"].is_number());
  }
  for (const auto& r : doc["series"]["equilibrium_residual"]) EXPECT_EQ(r.get<double>(), 0.0);
  EXPECT_EQ(doc["entry_steps"]["per_agent"].size(), 3u);
  EXPECT_EQ(doc["final_residual"], 0.0);
  EXPECT_TRUE(doc.contains("free_agent_violations"));
  EXPECT_TRUE(doc.contains("descent_violations"));
}

TEST(ReportJsonTest, DivergedRunHasFailingVerdictsWithEvidence) {
  testing::Gen gen(16);
  const auto p = SwarmParams::create(0.5, 1.0, 1.0, 10, 2);
  const auto t = simulate(gen.state(10, 2, 5.0), p, 10000);
  ASSERT_EQ(t.termination, TerminationReason::diverged);
  const auto doc = nlohmann::json::parse(report_to_json(analyze(t)));
  EXPECT_EQ(doc["termination_reason"], "diverged");
  bool saw_cohesion = false;
  for (const auto& v : doc["verdicts"]) {
    if (v["name"] == "theorem1_cohesion") {
      saw_cohesion = true;
      EXPECT_FALSE(v["pass"].get<bool>());
      EXPECT_EQ(v["evidence_step"].get<std::size_t>(), t.steps());
    }
  }
  EXPECT_TRUE(saw_cohesion);
  // nlohmann writes NaN/Inf as null; every series value must be a real number.
  for (const auto* key : {"j", "equilibrium_residual", "center_drift"}) {
    for (const auto& v : doc["series"][key]) EXPECT_TRUE(v.is_number()) << key;
  }
}

TEST(ReportJsonTest, UnwritablePathIsIoError) {
  const auto p = SwarmParams::create(0.1, 0.5, 1.0, 1, 1);
  const auto report = analyze(simulate(SwarmState(0, 1, {0.0}), p, 1));
  EXPECT_THROW(emit_report(report, "/nonexistent-swarmagg-dir/r.json"), IoError);
}

}  // namespace
}  // namespace swarmagg
