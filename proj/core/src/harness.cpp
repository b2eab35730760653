#include "swarmagg/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "swarmagg/dynamics.hpp"
#include "swarmagg/errors.hpp"
#include "swarmagg/io.hpp"
#include "swarmagg/rng.hpp"

namespace swarmagg {

SwarmState init_positions(const ExperimentConfig& config) {
  if (const auto* expl = std::get_if<ExplicitInit>(&config.init)) {
    return SwarmState::from_rows(0, expl->positions);
  }
  const double half = std::get<UniformInit>(config.init).half_width;
  const std::size_t count = config.params.agents() * config.params.dim();
  Xoshiro256StarStar rng(config.seed);
  std::vector<double> coords(count);
  for (auto& v : coords) v = -half + 2.0 * half * rng.next_unit();
  return SwarmState(0, config.params.dim(), std::move(coords));
}

InitSpec describe_init(const ExperimentConfig& config) {
  if (std::holds_alternative<ExplicitInit>(config.init)) return InitSpec{"explicit", {}, ""};
  return InitSpec{"uniform_hypercube", std::get<UniformInit>(config.init).half_width,
                  std::string(Xoshiro256StarStar::kIdentifier)};
}

ExitCode classify(const AnalysisReport& report) {
  if (report.termination == TerminationReason::diverged) return ExitCode::diverged;
  if (report.validated_regime && !report.all_pass()) return ExitCode::verdict_failure;
  return ExitCode::ok;
}

namespace {

ExperimentResult execute(const ExperimentConfig& config) {
  Trajectory trajectory =
      simulate(init_positions(config), config.params, config.max_steps, config.stop);
  trajectory.seed = config.seed;
  trajectory.init = describe_init(config);
  AnalysisReport report = analyze(trajectory);
  const ExitCode code = classify(report);
  return ExperimentResult{std::move(trajectory), std::move(report), code};
}

void write_outputs(const ExperimentResult& result, const OutputSpec& output) {
  if (output.trajectory) export_trajectory(result.trajectory, *output.trajectory, output.format);
  if (output.report) emit_report(result.report, *output.report);
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  ExperimentResult result = execute(config);
  write_outputs(result, config.output);
  return result;
}

// Sweeps -------------------------------------------------------------------

namespace {

std::optional<std::uint64_t> as_integer(const SweepValue& v) {
  if (const auto* u = std::get_if<std::uint64_t>(&v)) return *u;
  const double d = std::get<double>(v);
  if (d >= 0.0 && d < 0x1.0p64 && std::floor(d) == d) return static_cast<std::uint64_t>(d);
  return std::nullopt;
}

double as_real(const SweepValue& v) {
  if (const auto* u = std::get_if<std::uint64_t>(&v)) return static_cast<double>(*u);
  return std::get<double>(v);
}

// Applies one coordinate; returns an error message for ill-typed values.
std::optional<std::string> apply(ExperimentSettings& s, SweepParameter p, const SweepValue& v) {
  switch (p) {
    case SweepParameter::a: s.a = as_real(v); return std::nullopt;
    case SweepParameter::b: s.b = as_real(v); return std::nullopt;
    case SweepParameter::c: s.c = as_real(v); return std::nullopt;
    case SweepParameter::half_width: s.half_width = as_real(v); return std::nullopt;
    case SweepParameter::agents:
    case SweepParameter::dim:
    case SweepParameter::seed: {
      const auto n = as_integer(v);
      if (!n) return std::string(to_string(p)) + " must be a non-negative integer";
      if (p == SweepParameter::agents) s.agents = *n;
      if (p == SweepParameter::dim) s.dim = *n;
      if (p == SweepParameter::seed) s.seed = *n;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::vector<std::vector<std::size_t>> cartesian(const std::vector<SweepAxis>& axes) {
  std::vector<std::vector<std::size_t>> points{{}};
  for (const auto& axis : axes) {
    std::vector<std::vector<std::size_t>> grown;
    grown.reserve(points.size() * axis.values.size());
    for (const auto& prefix : points) {
      for (std::size_t v = 0; v < axis.values.size(); ++v) {
        auto next = prefix;
        next.push_back(v);
        grown.push_back(std::move(next));
      }
    }
    points = std::move(grown);
  }
  return points;
}

SweepRow run_point(const SweepSpec& spec, std::size_t index,
                   const std::vector<std::size_t>& choice) {
  SweepRow row;
  row.index = index;
  row.settings = spec.base;
  row.settings.output = {};
  for (std::size_t ax = 0; ax < spec.axes.size(); ++ax) {
    const auto& axis = spec.axes[ax];
    if (auto err = apply(row.settings, axis.parameter, axis.values[choice[ax]])) {
      row.skipped = true;
      row.skip_reason = *err;
      return row;
    }
  }

  std::optional<ExperimentConfig> config;
  try {
    config = make_config(row.settings);
  } catch (const ConfigError& e) {
    row.skipped = true;
    row.skip_reason = e.what();
    return row;
  }
  if (spec.output_dir) {
    const std::string stem = "point_" + std::to_string(index);
    config->output.format = spec.base.output.format;
    config->output.trajectory =
        *spec.output_dir / (stem + "_trajectory." + std::string(to_string(config->output.format)));
    config->output.report = *spec.output_dir / (stem + "_report.json");
  }

  const ExperimentResult result = run_experiment(*config);
  row.settings.agents = config->params.agents();
  row.settings.dim = config->params.dim();
  row.bounds = result.report.bounds;
  row.validated_regime = result.report.validated_regime;
  row.entry_step = result.report.entry.overall;
  row.final_residual = result.report.final_residual;
  row.final_max_error = result.report.final_max_error;
  row.termination = result.report.termination;
  row.steps = result.report.steps;
  row.verdicts = result.report.verdicts;
  row.exit_code = result.exit_code;
  return row;
}

}  // namespace

SweepSummary run_sweep(const SweepSpec& spec) {
  const auto points = cartesian(spec.axes);
  SweepSummary summary;
  summary.rows.resize(points.size());

  std::size_t workers = spec.threads != 0 ? spec.threads : std::thread::hardware_concurrency();
  workers = std::clamp<std::size_t>(workers, 1, points.size());

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t idx = next++; idx < points.size(); idx = next++) {
      try {
        summary.rows[idx] = run_point(spec, idx, points[idx]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  const bool any_valid = std::any_of(summary.rows.begin(), summary.rows.end(),
                                     [](const SweepRow& r) { return !r.skipped; });
  if (!any_valid) throw ConfigError("every sweep point is invalid");
  return summary;
}

std::string SweepSummary::to_csv() const {
  static constexpr std::string_view kVerdicts[] = {
      "lemma1_stationary_center", "lemma2_descent", "theorem1_cohesion", "theorem2_stability"};
  std::ostringstream out;
  out << "index,a,b,c,M,n,L,seed,status,validated_regime,delta,epsilon,k_bar,entry_step,"
         "final_residual,final_max_error,termination,steps";
  for (auto name : kVerdicts) out << ',' << name;
  out << ",reason\n";

  auto opt_real = [](const std::optional<double>& v) {
    return v ? format_double(*v) : std::string{};
  };
  auto opt_int = [](const auto& v) { return v ? std::to_string(*v) : std::string{}; };

  for (const auto& row : rows) {
    const auto& s = row.settings;
    out << row.index << ',' << opt_real(s.a) << ',' << opt_real(s.b) << ',' << opt_real(s.c) << ','
        << opt_int(s.agents) << ',' << opt_int(s.dim) << ','
        << (s.init_kind == "uniform_hypercube" ? format_double(s.half_width) : std::string{})
        << ',' << s.seed << ',';
    if (row.skipped) {
      out << "skipped,,,,,,,,,,";
      for (std::size_t v = 0; v < std::size(kVerdicts); ++v) out << ',';
      std::string reason = row.skip_reason;
      std::replace(reason.begin(), reason.end(), ',', ';');
      out << '"' << reason << "\"\n";
      continue;
    }
    out << (row.termination == TerminationReason::diverged ? "diverged" : "ok") << ','
        << (row.validated_regime ? "true" : "false") << ',' << format_double(row.bounds.delta)
        << ',' << format_double(row.bounds.epsilon) << ',' << row.bounds.k_bar << ','
        << opt_int(row.entry_step) << ',' << format_double(row.final_residual) << ','
        << format_double(row.final_max_error) << ',' << to_string(row.termination) << ','
        << row.steps;
    for (auto name : kVerdicts) {
      auto it = std::find_if(row.verdicts.begin(), row.verdicts.end(),
                             [&](const Verdict& v) { return v.name == name; });
      out << ',' << (it == row.verdicts.end() ? "" : it->pass ? "pass" : "fail");
    }
    out << ",\n";
  }
  return out.str();
}

}  // namespace swarmagg
