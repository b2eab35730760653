#include <charconv>
#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>

#include <json.hpp>

#include "file_util.hpp"
#include "swarmagg/errors.hpp"
#include "swarmagg/io.hpp"

namespace swarmagg {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double value) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", value);
  return std::string(buf, static_cast<std::size_t>(len));
}

void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out) {
  const std::size_t dim = trajectory.params.dim();
  out << "step,agent";
  for (std::size_t d = 0; d < dim; ++d) out << ",x" << d;
  out << '\n';
  for (const auto& state : trajectory.states) {
    for (std::size_t i = 0; i < state.agents(); ++i) {
      out << state.step() << ',' << i;
      for (double v : state.position(i)) out << ',' << format_double(v);
      out << '\n';
    }
  }
}

namespace {

ordered_json provenance_json(const Trajectory& t) {
  ordered_json init{{"kind", t.init.kind}};
  if (t.init.half_width) init["half_width"] = *t.init.half_width;
  return ordered_json{
      {"params",
       {{"a", t.params.a()},
        {"b", t.params.b()},
        {"c", t.params.c()},
        {"agents", t.params.agents()},
        {"dim", t.params.dim()}}},
      {"seed", t.seed},
      {"prng", t.init.prng},
      {"init", init},
  };
}

[[noreturn]] void malformed(const std::string& what) {
  throw ConfigError("malformed trajectory: " + what);
}

}  // namespace

void write_trajectory_json(const Trajectory& trajectory, std::ostream& out) {
  ordered_json states = ordered_json::array();
  for (const auto& state : trajectory.states) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < state.agents(); ++i) {
      const auto p = state.position(i);
      rows.push_back(std::vector<double>(p.begin(), p.end()));
    }
    states.push_back(ordered_json{{"k", state.step()}, {"positions", std::move(rows)}});
  }
  const ordered_json doc{
      {"schema_version", kTrajectorySchemaVersion},
      {"provenance", provenance_json(trajectory)},
      {"states", std::move(states)},
      {"termination_reason", std::string(to_string(trajectory.termination))},
  };
  out << doc.dump(1) << '\n';
}

void export_trajectory(const Trajectory& trajectory, const std::filesystem::path& path,
                       OutputFormat format) {
  detail::write_file(path, [&](std::ostream& out) {
    if (format == OutputFormat::csv) {
      write_trajectory_csv(trajectory, out);
    } else {
      write_trajectory_json(trajectory, out);
    }
  });
}

Trajectory parse_trajectory_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
    const auto& prov = doc.at("provenance");
    const auto& p = prov.at("params");
    Trajectory t{.params = SwarmParams::create(p.at("a").get<double>(), p.at("b").get<double>(),
                                               p.at("c").get<double>(),
                                               p.at("agents").get<std::size_t>(),
                                               p.at("dim").get<std::size_t>()),
                 .seed = 0,
                 .init = {},
                 .states = {}};
    t.seed = prov.at("seed").get<std::uint64_t>();
    t.init.prng = prov.value("prng", std::string{});
    const auto& init = prov.at("init");
    t.init.kind = init.at("kind").get<std::string>();
    if (init.contains("half_width")) t.init.half_width = init["half_width"].get<double>();

    for (const auto& s : doc.at("states")) {
      const auto rows = s.at("positions").get<std::vector<std::vector<double>>>();
      t.states.push_back(SwarmState::from_rows(s.at("k").get<std::size_t>(), rows));
      if (t.states.back().step() != t.states.size() - 1) malformed("state steps not consecutive");
      if (!t.states.back().matches(t.params)) malformed("state shape disagrees with params");
    }
    const auto reason = termination_from_string(doc.at("termination_reason").get<std::string>());
    if (!reason) malformed("unknown termination_reason");
    t.termination = *reason;
    return t;
  } catch (const nlohmann::json::exception& e) {
    malformed(e.what());
  }
}

Trajectory read_trajectory_json(const std::filesystem::path& path) {
  return parse_trajectory_json(detail::read_text(path));
}

namespace {

template <typename T>
T parse_number(std::string_view field) {
  T value{};
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc{} || ptr != end) malformed("bad number '" + std::string(field) + "'");
  return value;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

}  // namespace

std::vector<SwarmState> parse_trajectory_csv(const std::string& text) {
  std::string_view rest(text);
  auto next_line = [&rest]() -> std::optional<std::string_view> {
    if (rest.empty()) return std::nullopt;
    const auto nl = rest.find('\n');
    auto line = rest.substr(0, nl);
    rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
  };

  const auto header = next_line();
  if (!header) malformed("empty CSV");
  const auto columns = split(*header);
  if (columns.size() < 3 || columns[0] != "step" || columns[1] != "agent") {
    malformed("unexpected CSV header");
  }
  const std::size_t dim = columns.size() - 2;

  std::vector<SwarmState> states;
  std::vector<double> coords;
  std::optional<std::size_t> current_step;
  std::size_t expected_agent = 0;
  auto flush = [&]() {
    if (!coords.empty()) states.emplace_back(*current_step, dim, std::move(coords));
    coords.clear();
  };

  while (auto line = next_line()) {
    if (line->empty()) continue;
    const auto fields = split(*line);
    if (fields.size() != dim + 2) malformed("row has wrong field count");
    const auto step = parse_number<std::size_t>(fields[0]);
    const auto agent = parse_number<std::size_t>(fields[1]);
    if (!current_step) {
      if (step != 0) malformed("first step must be 0");
      current_step = step;
    } else if (step != *current_step) {
      if (step != *current_step + 1) malformed("steps not consecutive");
      flush();
      current_step = step;
      expected_agent = 0;
    }
    if (agent != expected_agent++) malformed("agents out of order");
    for (std::size_t d = 0; d < dim; ++d) coords.push_back(parse_number<double>(fields[d + 2]));
  }
  flush();
  for (const auto& s : states) {
    if (s.agents() != states.front().agents()) malformed("agent count changes between steps");
  }
  return states;
}

std::vector<SwarmState> read_trajectory_csv(const std::filesystem::path& path) {
  return parse_trajectory_csv(detail::read_text(path));
}

}  // namespace swarmagg
