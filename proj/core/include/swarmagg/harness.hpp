#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "swarmagg/analysis.hpp"
#include "swarmagg/types.hpp"

namespace swarmagg {

enum class OutputFormat { csv, json };

std::string_view to_string(OutputFormat format);
std::optional<OutputFormat> format_from_string(std::string_view text);

struct OutputSpec {
  std::optional<std::filesystem::path> trajectory;
  std::optional<std::filesystem::path> report;
  OutputFormat format = OutputFormat::csv;  // trajectory format; reports are always JSON
};

struct UniformInit {
  double half_width;  // coordinates drawn from [-L, L)
};

struct ExplicitInit {
  std::vector<std::vector<double>> positions;
};

/// A validated experiment. Build one with make_config().
struct ExperimentConfig {
  SwarmParams params;
  std::uint64_t seed = 0;
  std::variant<UniformInit, ExplicitInit> init;
  std::size_t max_steps = 10000;
  StopCriteria stop;
  OutputSpec output;
};

/// Raw, possibly invalid experiment fields as read from a config file and
/// command-line overrides.
struct ExperimentSettings {
  std::optional<double> a, b, c;
  std::optional<std::size_t> agents, dim;
  std::uint64_t seed = 0;
  std::string init_kind = "uniform_hypercube";
  double half_width = 1.0;
  std::vector<std::vector<double>> positions;
  std::size_t max_steps = 10000;
  StopCriteria stop;
  OutputSpec output;
};

/// Throws ConfigError describing the first problem found.
ExperimentConfig make_config(const ExperimentSettings& settings);

ExperimentSettings parse_experiment_settings(std::string_view json_text);
ExperimentSettings load_experiment_settings(const std::filesystem::path& path);

/// Initial state at k = 0. Uniform init draws M*n coordinates agent-major from
/// Xoshiro256StarStar(seed).
SwarmState init_positions(const ExperimentConfig& config);

InitSpec describe_init(const ExperimentConfig& config);

enum class ExitCode : int {
  ok = 0,
  verdict_failure = 1,
  diverged = 2,
  config_error = 3,
  io_error = 4,
};

struct ExperimentResult {
  Trajectory trajectory;
  AnalysisReport report;
  ExitCode exit_code = ExitCode::ok;
};

/// Divergence maps to 2; otherwise 1 if the regime is validated and any
/// verdict fails; otherwise 0.
ExitCode classify(const AnalysisReport& report);

/// simulate + analyze, then writes any configured outputs (IoError on failure).
ExperimentResult run_experiment(const ExperimentConfig& config);

// Sweeps -------------------------------------------------------------------

enum class SweepParameter { a, b, c, agents, dim, half_width, seed };

std::optional<SweepParameter> sweep_parameter_from_string(std::string_view name);
std::string_view to_string(SweepParameter parameter);

using SweepValue = std::variant<std::uint64_t, double>;

struct SweepAxis {
  SweepParameter parameter;
  std::vector<SweepValue> values;
};

struct SweepSpec {
  ExperimentSettings base;
  std::vector<SweepAxis> axes;  // cartesian product, last axis varies fastest
  std::optional<std::filesystem::path> summary;     // CSV; stdout when absent
  std::optional<std::filesystem::path> output_dir;  // per-point trajectory/report files
  std::size_t threads = 0;                          // 0: hardware concurrency
};

SweepSpec parse_sweep_spec(std::string_view json_text);
SweepSpec load_sweep_spec(const std::filesystem::path& path);

struct SweepRow {
  std::size_t index = 0;
  ExperimentSettings settings;  // the point's resolved fields
  bool skipped = false;
  std::string skip_reason;
  DerivedBounds bounds;
  bool validated_regime = false;
  std::optional<std::size_t> entry_step;
  double final_residual = 0.0;
  double final_max_error = 0.0;
  TerminationReason termination = TerminationReason::max_steps;
  std::size_t steps = 0;
  std::vector<Verdict> verdicts;
  ExitCode exit_code = ExitCode::ok;
};

struct SweepSummary {
  std::vector<SweepRow> rows;  // in cartesian order regardless of completion order

  std::string to_csv() const;
};

/// Runs every cartesian point; invalid points become skipped rows. Throws
/// ConfigError if no point is valid.
SweepSummary run_sweep(const SweepSpec& spec);

}  // namespace swarmagg
