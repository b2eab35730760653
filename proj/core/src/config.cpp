#include <cmath>
#include <string>

#include <json.hpp>

#include "file_util.hpp"
#include "swarmagg/errors.hpp"
#include "swarmagg/harness.hpp"

namespace swarmagg {

using nlohmann::json;

std::string_view to_string(OutputFormat format) {
  return format == OutputFormat::csv ? "csv" : "json";
}

std::optional<OutputFormat> format_from_string(std::string_view text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  return std::nullopt;
}

std::optional<SweepParameter> sweep_parameter_from_string(std::string_view name) {
  if (name == "a") return SweepParameter::a;
  if (name == "b") return SweepParameter::b;
  if (name == "c") return SweepParameter::c;
  if (name == "M" || name == "agents") return SweepParameter::agents;
  if (name == "n" || name == "dim") return SweepParameter::dim;
  if (name == "L" || name == "half_width") return SweepParameter::half_width;
  if (name == "seed") return SweepParameter::seed;
  return std::nullopt;
}

std::string_view to_string(SweepParameter parameter) {
  switch (parameter) {
    case SweepParameter::a: return "a";
    case SweepParameter::b: return "b";
    case SweepParameter::c: return "c";
    case SweepParameter::agents: return "M";
    case SweepParameter::dim: return "n";
    case SweepParameter::half_width: return "L";
    case SweepParameter::seed: return "seed";
  }
  return "?";
}

ExperimentConfig make_config(const ExperimentSettings& s) {
  std::optional<std::size_t> agents = s.agents;
  std::optional<std::size_t> dim = s.dim;
  const bool explicit_init = s.init_kind == "explicit";
  if (explicit_init && !s.positions.empty()) {
    if (!agents) agents = s.positions.size();
    if (!dim) dim = s.positions.front().size();
  }
  if (!s.a || !s.b || !s.c) throw ConfigError("params a, b and c are required");
  if (!agents || !dim) throw ConfigError("params agents and dim are required");

  ExperimentConfig config{.params = SwarmParams::create(*s.a, *s.b, *s.c, *agents, *dim),
                          .seed = s.seed,
                          .init = UniformInit{s.half_width},
                          .max_steps = s.max_steps,
                          .stop = s.stop,
                          .output = s.output};

  if (s.init_kind == "uniform_hypercube") {
    if (!std::isfinite(s.half_width) || !(s.half_width > 0.0)) {
      throw ConfigError("init half_width must be finite and positive");
    }
  } else if (explicit_init) {
    if (s.positions.size() != *agents) {
      throw ConfigError("explicit init lists " + std::to_string(s.positions.size()) +
                        " positions for " + std::to_string(*agents) + " agents");
    }
    for (const auto& row : s.positions) {
      if (row.size() != *dim) {
        throw ConfigError("explicit init position has dimension " + std::to_string(row.size()) +
                          ", expected " + std::to_string(*dim));
      }
      for (double v : row) {
        if (!std::isfinite(v)) throw ConfigError("explicit init position is not finite");
      }
    }
    config.init = ExplicitInit{s.positions};
  } else {
    throw ConfigError("unknown init kind '" + s.init_kind + "'");
  }

  if (!std::isfinite(s.stop.residual_threshold) || s.stop.residual_threshold < 0.0) {
    throw ConfigError("stop residual_threshold must be finite and non-negative");
  }
  if (s.stop.guard_radius &&
      (!std::isfinite(*s.stop.guard_radius) || !(*s.stop.guard_radius > 0.0))) {
    throw ConfigError("stop guard_radius must be finite and positive");
  }
  return config;
}

namespace {

void reject_unknown(const json& obj, std::initializer_list<std::string_view> known,
                    std::string_view where) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (auto k : known) ok = ok || key == k;
    if (!ok) throw ConfigError("unknown key '" + key + "' in " + std::string(where));
  }
}

ExperimentSettings settings_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("experiment config must be a JSON object");
  reject_unknown(doc, {"kind", "params", "seed", "init", "max_steps", "stop", "output"},
                 "experiment config");
  ExperimentSettings s;
  if (doc.contains("params")) {
    const auto& p = doc["params"];
    reject_unknown(p, {"a", "b", "c", "agents", "dim"}, "params");
    if (p.contains("a")) s.a = p["a"].get<double>();
    if (p.contains("b")) s.b = p["b"].get<double>();
    if (p.contains("c")) s.c = p["c"].get<double>();
    if (p.contains("agents")) s.agents = p["agents"].get<std::size_t>();
    if (p.contains("dim")) s.dim = p["dim"].get<std::size_t>();
  }
  if (doc.contains("seed")) s.seed = doc["seed"].get<std::uint64_t>();
  if (doc.contains("init")) {
    const auto& init = doc["init"];
    reject_unknown(init, {"kind", "half_width", "positions"}, "init");
    s.init_kind = init.value("kind", s.init_kind);
    if (init.contains("half_width")) s.half_width = init["half_width"].get<double>();
    if (init.contains("positions")) {
      s.positions = init["positions"].get<std::vector<std::vector<double>>>();
    }
  }
  if (doc.contains("max_steps")) s.max_steps = doc["max_steps"].get<std::size_t>();
  if (doc.contains("stop")) {
    const auto& stop = doc["stop"];
    reject_unknown(stop, {"residual_threshold", "guard_radius"}, "stop");
    if (stop.contains("residual_threshold")) {
      s.stop.residual_threshold = stop["residual_threshold"].get<double>();
    }
    if (stop.contains("guard_radius") && !stop["guard_radius"].is_null()) {
      s.stop.guard_radius = stop["guard_radius"].get<double>();
    }
  }
  if (doc.contains("output")) {
    const auto& out = doc["output"];
    reject_unknown(out, {"trajectory", "report", "format"}, "output");
    if (out.contains("trajectory")) s.output.trajectory = out["trajectory"].get<std::string>();
    if (out.contains("report")) s.output.report = out["report"].get<std::string>();
    if (out.contains("format")) {
      const auto text = out["format"].get<std::string>();
      const auto format = format_from_string(text);
      if (!format) throw ConfigError("output format must be csv or json, got '" + text + "'");
      s.output.format = *format;
    }
  }
  return s;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
}

template <typename F>
auto with_type_errors(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
}

}  // namespace

ExperimentSettings parse_experiment_settings(std::string_view json_text) {
  const auto doc = parse_json(json_text);
  return with_type_errors([&] { return settings_from_json(doc); });
}

ExperimentSettings load_experiment_settings(const std::filesystem::path& path) {
  return parse_experiment_settings(detail::read_text(path));
}

SweepSpec parse_sweep_spec(std::string_view json_text) {
  const auto doc = parse_json(json_text);
  return with_type_errors([&] {
    if (!doc.is_object()) throw ConfigError("sweep spec must be a JSON object");
    reject_unknown(doc, {"kind", "base", "axes", "summary", "output_dir", "threads"},
                   "sweep spec");
    SweepSpec spec;
    spec.base = settings_from_json(doc.at("base"));
    for (const auto& axis : doc.at("axes")) {
      reject_unknown(axis, {"param", "values"}, "sweep axis");
      const auto name = axis.at("param").get<std::string>();
      const auto parameter = sweep_parameter_from_string(name);
      if (!parameter) throw ConfigError("unknown sweep parameter '" + name + "'");
      SweepAxis parsed{*parameter, {}};
      for (const auto& v : axis.at("values")) {
        if (v.is_number_unsigned()) {
          parsed.values.emplace_back(v.get<std::uint64_t>());
        } else if (v.is_number()) {
          parsed.values.emplace_back(v.get<double>());
        } else {
          throw ConfigError("sweep values must be numbers");
        }
      }
      if (parsed.values.empty()) throw ConfigError("sweep axis '" + name + "' has no values");
      spec.axes.push_back(std::move(parsed));
    }
    if (doc.contains("summary")) spec.summary = doc["summary"].get<std::string>();
    if (doc.contains("output_dir")) spec.output_dir = doc["output_dir"].get<std::string>();
    if (doc.contains("threads")) spec.threads = doc["threads"].get<std::size_t>();
    return spec;
  });
}

SweepSpec load_sweep_spec(const std::filesystem::path& path) {
  return parse_sweep_spec(detail::read_text(path));
}

}  // namespace swarmagg
