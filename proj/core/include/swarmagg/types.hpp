#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace swarmagg {

/// Constants of the attraction-repulsion model together with the swarm size.
///
/// Only constructible through create(), which enforces a, b, c > 0, b > a,
/// agents >= 1 and dim >= 1. Instances are therefore always valid.
class SwarmParams {
 public:
  static SwarmParams create(double a, double b, double c, std::size_t agents, std::size_t dim);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double c() const noexcept { return c_; }
  std::size_t agents() const noexcept { return agents_; }
  std::size_t dim() const noexcept { return dim_; }

  /// 0 < a*M < 2 (b > a holds by construction). Verdicts only carry
  /// pass/fail expectations inside this regime.
  bool validated_regime() const noexcept;

  bool operator==(const SwarmParams&) const = default;

 private:
  SwarmParams(double a, double b, double c, std::size_t agents, std::size_t dim)
      : a_(a), b_(b), c_(c), agents_(agents), dim_(dim) {}

  double a_;
  double b_;
  double c_;
  std::size_t agents_;
  std::size_t dim_;
};

/// Positions of all agents at one time step, stored agent-major in one
/// contiguous buffer (agent i occupies [i*dim, (i+1)*dim)).
class SwarmState {
 public:
  /// Throws ConfigError if the buffer is not agents*dim long or holds a
  /// non-finite coordinate.
  SwarmState(std::size_t step, std::size_t dim, std::vector<double> coords);

  static SwarmState from_rows(std::size_t step, const std::vector<std::vector<double>>& rows);

  std::size_t step() const noexcept { return step_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t agents() const noexcept { return coords_.size() / dim_; }

  std::span<const double> position(std::size_t i) const {
    return std::span<const double>(coords_).subspan(i * dim_, dim_);
  }
  std::span<const double> coords() const noexcept { return coords_; }

  /// True when agent count and dimension agree with params.
  bool matches(const SwarmParams& params) const noexcept;

  bool operator==(const SwarmState&) const = default;

 private:
  std::size_t step_;
  std::size_t dim_;
  std::vector<double> coords_;
};

enum class TerminationReason { max_steps, equilibrium_reached, diverged };

std::string_view to_string(TerminationReason reason);
std::optional<TerminationReason> termination_from_string(std::string_view text);

struct StopCriteria {
  /// Stop once max_i ||sum_j g(x_i - x_j)|| falls to or below this value.
  double residual_threshold = 1e-10;
  /// Blow-up radius for ||e_i||. When absent, 1e6 * (initial max ||e_i|| + 1).
  std::optional<double> guard_radius;

  bool operator==(const StopCriteria&) const = default;
};

/// How the initial state was produced; echoed into exported provenance.
struct InitSpec {
  std::string kind = "explicit";  // "uniform_hypercube" or "explicit"
  std::optional<double> half_width;
  std::string prng;  // generator identifier for seeded kinds, empty otherwise

  bool operator==(const InitSpec&) const = default;
};

struct Trajectory {
  SwarmParams params;
  std::uint64_t seed = 0;
  InitSpec init;
  std::vector<SwarmState> states;
  TerminationReason termination = TerminationReason::max_steps;

  std::size_t steps() const noexcept { return states.empty() ? 0 : states.size() - 1; }

  bool operator==(const Trajectory&) const = default;
};

}  // namespace swarmagg
