#include "swarmagg/harness.hpp"

#include <algorithm>
#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "swarmagg/dynamics.hpp"
#include "swarmagg/errors.hpp"
#include "swarmagg/io.hpp"
#include "test_support.hpp"

namespace swarmagg {
namespace {

namespace fs = std::filesystem;

ExperimentSettings p1_settings() {
  ExperimentSettings s;
  s.a = 0.01;
  s.b = 0.5;
  s.c = 1.0;
  s.agents = 10;
  s.dim = 2;
  s.seed = 1;
  s.half_width = 5.0;
  return s;
}

TEST(RngTest, MatchesReferenceStream) {
  // Independent Python transcription of the reference C code.
  Xoshiro256StarStar zero(0);
  EXPECT_EQ(zero(), 0x99ec5f36cb75f2b4ULL);
  EXPECT_EQ(zero(), 0xbf6e1f784956452aULL);
  EXPECT_EQ(zero(), 0x1a5f849d4933e6e0ULL);
  Xoshiro256StarStar answer(42);
  EXPECT_EQ(answer(), 0x15780b2e0c2ec716ULL);
  EXPECT_EQ(answer(), 0x6104d9866d113a7eULL);
}

TEST(InitPositionsTest, GoldenUniformDraw) {
  // seed=42, M=4, n=2, L=5; frozen from an independent Python implementation
  // of xoshiro256** seeded through SplitMix64.
  ExperimentSettings s = p1_settings();
  s.agents = 4;
  s.seed = 42;
  const auto state = init_positions(make_config(s));
  const std::vector<double> golden{-4.161370289401178, -1.2101974933733137, 1.8004341102813939,
                                   4.246929453253877,  4.918039142821028,   2.697394604342424,
                                   2.192585778779156,  3.5000844391097274};
  ASSERT_EQ(state.coords().size(), golden.size());
  for (std::size_t i = 0; i < golden.size(); ++i) {
    EXPECT_EQ(state.coords()[i], golden[i]) << i;
    EXPECT_GE(state.coords()[i], -5.0);
    EXPECT_LE(state.coords()[i], 5.0);
  }
  EXPECT_EQ(state.step(), 0u);
}

TEST(InitPositionsTest, DeterministicAndSeedSensitive) {
  const auto config = make_config(p1_settings());
  EXPECT_EQ(init_positions(config), init_positions(config));
  auto other = p1_settings();
  other.seed = 2;
  EXPECT_NE(init_positions(make_config(other)), init_positions(config));
}

TEST(InitPositionsTest, ExplicitIsVerbatim) {
  ExperimentSettings s;
  s.a = 0.1;
  s.b = 0.3;
  s.c = 1.0;
  s.init_kind = "explicit";
  s.positions = {{1.0, 2.0}, {-3.5, 0.125}};
  const auto config = make_config(s);
  EXPECT_EQ(config.params.agents(), 2u);
  EXPECT_EQ(config.params.dim(), 2u);
  EXPECT_EQ(init_positions(config), SwarmState::from_rows(0, s.positions));
  EXPECT_EQ(describe_init(config).kind, "explicit");
  EXPECT_TRUE(describe_init(config).prng.empty());
}

TEST(MakeConfigTest, RejectsInvalidSettings) {
  auto s = p1_settings();
  s.b = 0.005;
  EXPECT_THROW(make_config(s), ConfigError);

  s = p1_settings();
  s.half_width = 0.0;
  EXPECT_THROW(make_config(s), ConfigError);

  s = p1_settings();
  s.a.reset();
  EXPECT_THROW(make_config(s), ConfigError);

  s = p1_settings();
  s.init_kind = "explicit";
  s.positions = {{0.0, 0.0}};  // 1 position for 10 agents
  EXPECT_THROW(make_config(s), ConfigError);

  s.agents = 1;
  s.positions = {{0.0, 0.0, 0.0}};  // wrong dimension
  EXPECT_THROW(make_config(s), ConfigError);

  s = p1_settings();
  s.init_kind = "gaussian";
  EXPECT_THROW(make_config(s), ConfigError);

  s = p1_settings();
  s.stop.guard_radius = -1.0;
  EXPECT_THROW(make_config(s), ConfigError);
}

TEST(ConfigParseTest, ReadsAllFields) {
  const auto s = parse_experiment_settings(R"({
    "kind": "experiment",
    "params": {"a": 0.02, "b": 0.4, "c": 2.5, "agents": 6, "dim": 3},
    "seed": 18446744073709551615,
    "init": {"kind": "uniform_hypercube", "half_width": 2.5},
    "max_steps": 123,
    "stop": {"residual_threshold": 1e-9, "guard_radius": 1000},
    "output": {"trajectory": "t.json", "report": "r.json", "format": "json"}
  })");
  EXPECT_EQ(s.a, 0.02);
  EXPECT_EQ(s.c, 2.5);
  EXPECT_EQ(s.agents, 6u);
  EXPECT_EQ(s.seed, 18446744073709551615ULL);
  EXPECT_EQ(s.half_width, 2.5);
  EXPECT_EQ(s.max_steps, 123u);
  EXPECT_EQ(s.stop.residual_threshold, 1e-9);
  EXPECT_EQ(s.stop.guard_radius, 1000.0);
  EXPECT_EQ(s.output.trajectory, fs::path("t.json"));
  EXPECT_EQ(s.output.format, OutputFormat::json);
}

TEST(ConfigParseTest, DefaultsMatchDocumentedStopCriteria) {
  const auto s = parse_experiment_settings(R"({"params": {"a": 0.1, "b": 0.2, "c": 1}})");
  EXPECT_EQ(s.max_steps, 10000u);
  EXPECT_EQ(s.stop.residual_threshold, 1e-10);
  EXPECT_FALSE(s.stop.guard_radius);
}

TEST(ConfigParseTest, RejectsTyposAndBadTypes) {
  EXPECT_THROW(parse_experiment_settings(R"({"parms": {}})"), ConfigError);
  EXPECT_THROW(parse_experiment_settings(R"({"params": {"alpha": 1}})"), ConfigError);
  EXPECT_THROW(parse_experiment_settings(R"({"params": {"a": "big"}})"), ConfigError);
  EXPECT_THROW(parse_experiment_settings(R"({"output": {"format": "xml"}})"), ConfigError);
  EXPECT_THROW(parse_experiment_settings("{"), ConfigError);
  EXPECT_THROW(load_experiment_settings("/nonexistent-swarmagg/config.json"), IoError);
}

TEST(RunExperimentTest, SingleAgentIsConstantAndExitsZero) {
  auto s = p1_settings();
  s.agents = 1;
  s.max_steps = 10;
  const auto result = run_experiment(make_config(s));
  EXPECT_EQ(result.exit_code, ExitCode::ok);
  for (const auto& st : result.trajectory.states) EXPECT_EQ(st.coords()[0], result.trajectory.states[0].coords()[0]);
}

TEST(RunExperimentTest, P1PassesCohesion) {
  const auto result = run_experiment(make_config(p1_settings()));
  EXPECT_EQ(result.exit_code, ExitCode::ok);
  EXPECT_TRUE(result.report.verdict("theorem1_cohesion")->pass);
  EXPECT_EQ(result.trajectory.seed, 1u);
  EXPECT_EQ(result.trajectory.init.prng, "xoshiro256starstar-splitmix64");
  EXPECT_EQ(result.trajectory.init.half_width, 5.0);
}

TEST(RunExperimentTest, LargeGainExitsTwo) {
  auto s = p1_settings();
  s.a = 0.5;
  s.b = 1.0;
  const auto result = run_experiment(make_config(s));
  EXPECT_EQ(result.trajectory.termination, TerminationReason::diverged);
  EXPECT_EQ(result.exit_code, ExitCode::diverged);
}

TEST(RunExperimentTest, SlowSaddleSeedExitsOne) {
  // In two dimensions seed 42 is still crawling along a near-neutral
  // direction after 10000 steps (residual ~1e-6), so the stability verdict
  // fails inside the validated regime.
  auto s = p1_settings();
  s.seed = 42;
  const auto result = run_experiment(make_config(s));
  EXPECT_EQ(result.trajectory.termination, TerminationReason::max_steps);
  EXPECT_FALSE(result.report.verdict("theorem2_stability")->pass);
  EXPECT_EQ(result.exit_code, ExitCode::verdict_failure);
}

TEST(RunExperimentTest, OutsideValidatedRegimeFailuresDoNotFail) {
  AnalysisReport report;
  report.validated_regime = false;
  report.verdicts.push_back(Verdict{"theorem2_stability", false, false, 3, ""});
  EXPECT_EQ(classify(report), ExitCode::ok);
  report.validated_regime = true;
  EXPECT_EQ(classify(report), ExitCode::verdict_failure);
  report.termination = TerminationReason::diverged;
  EXPECT_EQ(classify(report), ExitCode::diverged);
}

TEST(RunExperimentTest, WritesConfiguredOutputs) {
  const auto dir = fs::temp_directory_path() / "swarmagg_harness_test";
  fs::create_directories(dir);
  auto s = p1_settings();
  s.max_steps = 20;
  s.output.trajectory = dir / "t.csv";
  s.output.report = dir / "r.json";
  const auto result = run_experiment(make_config(s));
  EXPECT_EQ(read_trajectory_csv(dir / "t.csv"), result.trajectory.states);
  EXPECT_TRUE(fs::file_size(dir / "r.json") > 0);

  s.output.trajectory = fs::path("/nonexistent-swarmagg-dir/t.csv");
  EXPECT_THROW(run_experiment(make_config(s)), IoError);
}

SweepSpec m_sweep(std::vector<std::uint64_t> ms) {
  SweepSpec spec;
  spec.base = p1_settings();
  spec.base.max_steps = 2000;
  SweepAxis axis{SweepParameter::agents, {}};
  for (auto m : ms) axis.values.emplace_back(m);
  spec.axes.push_back(axis);
  return spec;
}

TEST(SweepTest, EpsilonColumnIsConstantAcrossAgentCounts) {
  const auto summary = run_sweep(m_sweep({5, 10, 20, 40}));
  ASSERT_EQ(summary.rows.size(), 4u);
  for (const auto& row : summary.rows) {
    EXPECT_FALSE(row.skipped);
    EXPECT_EQ(row.bounds.epsilon, summary.rows.front().bounds.epsilon);
  }
  EXPECT_EQ(summary.rows[2].settings.agents, 20u);
}

TEST(SweepTest, InvalidPointsAreSkippedNotFatal) {
  SweepSpec spec;
  spec.base = p1_settings();
  spec.base.max_steps = 50;
  spec.axes.push_back({SweepParameter::b, {0.005, 0.5}});
  const auto summary = run_sweep(spec);
  ASSERT_EQ(summary.rows.size(), 2u);
  EXPECT_TRUE(summary.rows[0].skipped);
  EXPECT_NE(summary.rows[0].skip_reason.find("b must exceed a"), std::string::npos);
  EXPECT_FALSE(summary.rows[1].skipped);
  const auto csv = summary.to_csv();
  EXPECT_NE(csv.find("skipped"), std::string::npos);
}

TEST(SweepTest, AllInvalidIsConfigError) {
  SweepSpec spec;
  spec.base = p1_settings();
  spec.axes.push_back({SweepParameter::b, {0.001, 0.005}});
  EXPECT_THROW(run_sweep(spec), ConfigError);
}

TEST(SweepTest, NonIntegerCountIsSkipped) {
  SweepSpec spec = m_sweep({4});
  spec.axes.front().values.emplace_back(2.5);
  const auto summary = run_sweep(spec);
  EXPECT_FALSE(summary.rows[0].skipped);
  EXPECT_TRUE(summary.rows[1].skipped);
}

TEST(SweepTest, CartesianOrderLastAxisFastest) {
  SweepSpec spec = m_sweep({3, 4});
  spec.base.max_steps = 5;
  spec.axes.push_back({SweepParameter::seed, {std::uint64_t{7}, std::uint64_t{8}, std::uint64_t{9}}});
  const auto summary = run_sweep(spec);
  ASSERT_EQ(summary.rows.size(), 6u);
  EXPECT_EQ(summary.rows[0].settings.agents, 3u);
  EXPECT_EQ(summary.rows[0].settings.seed, 7u);
  EXPECT_EQ(summary.rows[2].settings.seed, 9u);
  EXPECT_EQ(summary.rows[3].settings.agents, 4u);
  EXPECT_EQ(summary.rows[3].settings.seed, 7u);
}

TEST(SweepTest, DeterministicRegardlessOfThreadCount) {
  auto spec = m_sweep({5, 10, 20});
  spec.axes.push_back({SweepParameter::seed, {std::uint64_t{1}, std::uint64_t{2}}});
  spec.threads = 1;
  const auto serial = run_sweep(spec).to_csv();
  spec.threads = 4;
  EXPECT_EQ(run_sweep(spec).to_csv(), serial);
  EXPECT_EQ(run_sweep(spec).to_csv(), serial);
}

TEST(SweepTest, ParsesSpecFile) {
  const auto spec = load_sweep_spec(testing::data_dir() / "sweep_m.json");
  EXPECT_EQ(spec.axes.size(), 1u);
  EXPECT_EQ(spec.axes[0].parameter, SweepParameter::agents);
  EXPECT_EQ(spec.axes[0].values.size(), 3u);
  EXPECT_THROW(parse_sweep_spec(R"({"base": {}, "axes": [{"param": "q", "values": [1]}]})"),
               ConfigError);
  EXPECT_THROW(parse_sweep_spec(R"({"base": {}, "axes": [{"param": "a", "values": []}]})"),
               ConfigError);
}

}  // namespace
}  // namespace swarmagg
