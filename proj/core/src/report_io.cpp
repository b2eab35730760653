#include <ostream>
#include <string>

#include <json.hpp>

#include "file_util.hpp"
#include "swarmagg/io.hpp"

namespace swarmagg {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json optional_step(const std::optional<std::size_t>& k) {
  return k ? ordered_json(*k) : ordered_json(nullptr);
}

}  // namespace

std::string report_to_json(const AnalysisReport& report) {
  ordered_json entries = ordered_json::array();
  for (const auto& k : report.entry.per_agent) entries.push_back(optional_step(k));

  ordered_json verdicts = ordered_json::array();
  for (const auto& v : report.verdicts) {
    verdicts.push_back({{"name", v.name},
                        {"pass", v.pass},
                        {"applicable", v.applicable},
                        {"evidence_step", optional_step(v.evidence_step)},
                        {"detail", v.detail}});
  }

  ordered_json descent = ordered_json::array();
  for (const auto& d : report.descent_violations) {
    descent.push_back({{"k", d.step}, {"i", d.agent}});
  }
  ordered_json free_agents = ordered_json::array();
  for (const auto& f : report.free_agent_violations) {
    free_agents.push_back({{"k", f.step}, {"i", f.i}, {"j", f.j}});
  }

  const ordered_json doc{
      {"schema_version", kReportSchemaVersion},
      {"termination_reason", std::string(to_string(report.termination))},
      {"steps", report.steps},
      {"validated_regime", report.validated_regime},
      {"bounds",
       {{"delta", report.bounds.delta},
        {"epsilon", report.bounds.epsilon},
        {"k_bar", report.bounds.k_bar},
        {"phi", report.bounds.phi}}},
      {"verdicts", std::move(verdicts)},
      {"entry_steps", {{"per_agent", std::move(entries)}, {"overall", optional_step(report.entry.overall)}}},
      {"post_entry_excursions", report.post_entry_excursions},
      {"final_residual", report.final_residual},
      {"final_max_error", report.final_max_error},
      {"descent_violations",
       {{"count", report.descent_violation_count},
        {"listed", std::move(descent)},
        {"truncated", report.descent_violation_count > report.descent_violations.size()}}},
      {"free_agent_violations",
       {{"count", report.free_agent_violation_count},
        {"listed", std::move(free_agents)},
        {"truncated", report.free_agent_violation_count > report.free_agent_violations.size()}}},
      {"j_increase_count", report.j_increase_count},
      {"j_increases_while_free", report.j_increases_while_free},
      {"series",
       {{"j", report.j_series},
        {"equilibrium_residual", report.residual_series},
        {"center_drift", report.center_drift_series}}},
  };
  return doc.dump(1) + "\n";
}

void emit_report(const AnalysisReport& report, const std::filesystem::path& path) {
  const auto text = report_to_json(report);
  detail::write_file(path, [&](std::ostream& out) { out << text; });
}

}  // namespace swarmagg
