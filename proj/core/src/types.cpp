#include "swarmagg/types.hpp"

#include <cmath>
#include <string>

#include "swarmagg/errors.hpp"

namespace swarmagg {

SwarmParams SwarmParams::create(double a, double b, double c, std::size_t agents,
                                std::size_t dim) {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(a) || !positive(b) || !positive(c)) {
    throw ConfigError("a, b and c must be finite and positive (a=" + std::to_string(a) +
                      ", b=" + std::to_string(b) + ", c=" + std::to_string(c) + ")");
  }
  if (!(b > a)) {
    throw ConfigError("b must exceed a for the sign-change radius to exist (a=" +
                      std::to_string(a) + ", b=" + std::to_string(b) + ")");
  }
  if (agents < 1) throw ConfigError("agent count must be at least 1");
  if (dim < 1) throw ConfigError("dimension must be at least 1");
  return SwarmParams(a, b, c, agents, dim);
}

bool SwarmParams::validated_regime() const noexcept {
  const double am = a_ * static_cast<double>(agents_);
  return am > 0.0 && am < 2.0;
}

SwarmState::SwarmState(std::size_t step, std::size_t dim, std::vector<double> coords)
    : step_(step), dim_(dim), coords_(std::move(coords)) {
  if (dim_ == 0) throw ConfigError("state dimension must be at least 1");
  if (coords_.empty() || coords_.size() % dim_ != 0) {
    throw ConfigError("state buffer of " + std::to_string(coords_.size()) +
                      " values is not a whole number of " + std::to_string(dim_) +
                      "-vectors");
  }
  for (std::size_t idx = 0; idx < coords_.size(); ++idx) {
    if (!std::isfinite(coords_[idx])) {
      throw ConfigError("non-finite coordinate for agent " + std::to_string(idx / dim_));
    }
  }
}

SwarmState SwarmState::from_rows(std::size_t step, const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw ConfigError("state needs at least one agent");
  const std::size_t dim = rows.front().size();
  std::vector<double> coords;
  coords.reserve(rows.size() * dim);
  for (const auto& row : rows) {
    if (row.size() != dim) throw ConfigError("agent positions have inconsistent dimensions");
    coords.insert(coords.end(), row.begin(), row.end());
  }
  return SwarmState(step, dim, std::move(coords));
}

bool SwarmState::matches(const SwarmParams& params) const noexcept {
  return dim_ == params.dim() && agents() == params.agents();
}

std::string_view to_string(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::max_steps:
      return "max_steps";
    case TerminationReason::equilibrium_reached:
      return "equilibrium_reached";
    case TerminationReason::diverged:
      return "diverged";
  }
  return "unknown";
}

std::optional<TerminationReason> termination_from_string(std::string_view text) {
  if (text == "max_steps") return TerminationReason::max_steps;
  if (text == "equilibrium_reached") return TerminationReason::equilibrium_reached;
  if (text == "diverged") return TerminationReason::diverged;
  return std::nullopt;
}

}  // namespace swarmagg
