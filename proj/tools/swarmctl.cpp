// swarmctl: run, sweep and inspect the discrete-time attraction-repulsion swarm.
//
//   swarmctl run <config.json> [--a .. --format csv|json]
//   swarmctl sweep <sweep.json>
//   swarmctl bounds --a A --b B --c C [--agents M --dim N [--seed S --init-half-width L]]
//
// Exit codes: 0 ok, 1 verdict failure in a validated regime, 2 diverged,
// 3 configuration error, 4 I/O error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "swarmagg/analysis.hpp"
#include "swarmagg/errors.hpp"
#include "swarmagg/harness.hpp"
#include "swarmagg/io.hpp"

namespace {

using swarmagg::ExitCode;

struct Overrides {
  std::optional<double> a, b, c, half_width;
  std::optional<std::size_t> agents, dim, max_steps;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_trajectory, out_report, format;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--a", a, "Linear attraction gain a");
    cmd.add_option("--b", b, "Repulsion amplitude b (must exceed a)");
    cmd.add_option("--c", c, "Repulsion length scale c");
    cmd.add_option("--agents", agents, "Number of agents M");
    cmd.add_option("--dim", dim, "Space dimension n");
    cmd.add_option("--seed", seed, "PRNG seed for uniform initialization");
    cmd.add_option("--init-half-width", half_width, "Half width L of the initial hypercube");
    cmd.add_option("--max-steps,--steps", max_steps, "Maximum number of updates");
    cmd.add_option("--out-trajectory", out_trajectory, "Trajectory output path");
    cmd.add_option("--out-report", out_report, "Report output path (JSON)");
    cmd.add_option("--format", format, "Trajectory format: csv or json");
  }

  void apply(swarmagg::ExperimentSettings& s) const {
    if (a) s.a = a;
    if (b) s.b = b;
    if (c) s.c = c;
    if (agents) s.agents = agents;
    if (dim) s.dim = dim;
    if (seed) s.seed = *seed;
    if (half_width) {
      s.half_width = *half_width;
      s.init_kind = "uniform_hypercube";
    }
    if (max_steps) s.max_steps = *max_steps;
    if (out_trajectory) s.output.trajectory = *out_trajectory;
    if (out_report) s.output.report = *out_report;
    if (format) {
      const auto parsed = swarmagg::format_from_string(*format);
      if (!parsed) throw swarmagg::ConfigError("--format must be csv or json");
      s.output.format = *parsed;
    }
  }
};

int code(ExitCode c) { return static_cast<int>(c); }

int run_command(const std::optional<std::filesystem::path>& config_path, const Overrides& ov) {
  swarmagg::ExperimentSettings settings;
  if (config_path) settings = swarmagg::load_experiment_settings(*config_path);
  ov.apply(settings);
  const auto config = swarmagg::make_config(settings);
  const auto result = swarmagg::run_experiment(config);

  const auto& report = result.report;
  std::cout << "termination: " << swarmagg::to_string(report.termination) << " after "
            << report.steps << " steps\n"
            << "validated_regime: " << (report.validated_regime ? "true" : "false") << '\n'
            << "delta=" << swarmagg::format_double(report.bounds.delta)
            << " epsilon=" << swarmagg::format_double(report.bounds.epsilon)
            << " k_bar=" << report.bounds.k_bar << '\n';
  for (const auto& v : report.verdicts) {
    std::cout << (v.pass ? "PASS " : "FAIL ") << v.name << (v.applicable ? "" : " (not applicable)")
              << ": " << v.detail << '\n';
  }
  return code(result.exit_code);
}

int sweep_command(const std::filesystem::path& spec_path) {
  const auto spec = swarmagg::load_sweep_spec(spec_path);
  const auto summary = swarmagg::run_sweep(spec);
  const auto csv = summary.to_csv();
  if (spec.summary) {
    std::ofstream out(*spec.summary, std::ios::binary | std::ios::trunc);
    if (!out) throw swarmagg::IoError(*spec.summary, "cannot open for writing");
    out << csv;
    if (!out.flush()) throw swarmagg::IoError(*spec.summary, "write failed");
  } else {
    std::cout << csv;
  }
  return code(ExitCode::ok);
}

int bounds_command(const Overrides& ov) {
  if (!ov.a || !ov.b || !ov.c) throw swarmagg::ConfigError("bounds needs --a, --b and --c");
  const auto params =
      swarmagg::SwarmParams::create(*ov.a, *ov.b, *ov.c, ov.agents.value_or(1), ov.dim.value_or(1));
  std::cout << "delta=" << swarmagg::format_double(swarmagg::delta(params)) << '\n'
            << "epsilon=" << swarmagg::format_double(swarmagg::epsilon(params)) << '\n'
            << "phi=" << swarmagg::format_double(swarmagg::phi(params)) << '\n';
  if (ov.agents) {
    std::cout << "validated_regime=" << (params.validated_regime() ? "true" : "false") << '\n';
  }
  if (ov.agents && ov.dim && ov.half_width) {
    swarmagg::ExperimentSettings s;
    ov.apply(s);
    const auto config = swarmagg::make_config(s);
    std::cout << "k_bar=" << swarmagg::k_bar(swarmagg::init_positions(config), params) << '\n';
  }
  return code(ExitCode::ok);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-time attraction-repulsion swarm simulator and checker", "swarmctl"};
  app.require_subcommand(1);

  Overrides run_ov;
  std::optional<std::filesystem::path> run_config;
  auto* run = app.add_subcommand("run", "Simulate one experiment and analyze it");
  run->add_option("config", run_config, "Experiment config (JSON)");
  run_ov.add_to(*run);

  std::filesystem::path sweep_spec;
  auto* sweep = app.add_subcommand("sweep", "Run a cartesian parameter sweep");
  sweep->add_option("spec", sweep_spec, "Sweep spec (JSON)")->required();

  Overrides bounds_ov;
  auto* bounds = app.add_subcommand("bounds", "Print delta, epsilon, phi and optionally k_bar");
  bounds_ov.add_to(*bounds);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return code(ExitCode::config_error);
  }

  try {
    if (*run) return run_command(run_config, run_ov);
    if (*sweep) return sweep_command(sweep_spec);
    return bounds_command(bounds_ov);
  } catch (const swarmagg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return code(ExitCode::config_error);
  } catch (const swarmagg::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return code(ExitCode::io_error);
  }
}
