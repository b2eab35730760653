#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "swarmagg/analysis.hpp"
#include "swarmagg/harness.hpp"
#include "swarmagg/types.hpp"

namespace swarmagg {

inline constexpr int kTrajectorySchemaVersion = 1;
inline constexpr int kReportSchemaVersion = 1;

/// CSV: header `step,agent,x0,...,x{n-1}`, one row per (step, agent), values
/// printed with 17 significant digits.
void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out);

/// JSON: {schema_version, provenance, states: [{k, positions}], termination_reason}.
void write_trajectory_json(const Trajectory& trajectory, std::ostream& out);

void export_trajectory(const Trajectory& trajectory, const std::filesystem::path& path,
                       OutputFormat format);

Trajectory read_trajectory_json(const std::filesystem::path& path);
Trajectory parse_trajectory_json(const std::string& text);

/// CSV carries positions only; provenance is not recoverable from it.
std::vector<SwarmState> read_trajectory_csv(const std::filesystem::path& path);
std::vector<SwarmState> parse_trajectory_csv(const std::string& text);

std::string report_to_json(const AnalysisReport& report);
void emit_report(const AnalysisReport& report, const std::filesystem::path& path);

/// `value` printed with 17 significant digits ("%.17g"); parses back bit-exactly.
std::string format_double(double value);

}  // namespace swarmagg
