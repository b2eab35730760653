#include "swarmagg/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "swarmagg/errors.hpp"

namespace swarmagg {
namespace {

// Scalar factor s with g(y) = -y * s. Depends on y only through ||y||^2, so
// g(-y) is the exact negation of g(y).
inline double interaction_gain(double squared_norm, const SwarmParams& params) {
  return params.a() - params.b() * std::exp(-squared_norm / params.c());
}

void require_matching(const SwarmState& state, const SwarmParams& params) {
  if (!state.matches(params)) {
    throw ConfigError("state has " + std::to_string(state.agents()) + " agents in " +
                      std::to_string(state.dim()) + " dimensions; params expect " +
                      std::to_string(params.agents()) + " in " + std::to_string(params.dim()));
  }
}

double row_norm(std::span<const double> v) {
  double sq = 0.0;
  for (double x : v) sq += x * x;
  return std::sqrt(sq);
}

double max_row_norm(const std::vector<double>& buffer, std::size_t dim) {
  double best = 0.0;
  for (std::size_t off = 0; off < buffer.size(); off += dim) {
    best = std::max(best, row_norm(std::span<const double>(buffer).subspan(off, dim)));
  }
  return best;
}

}  // namespace

void attraction_repulsion(std::span<const double> y, const SwarmParams& params,
                          std::span<double> out) {
  if (out.size() != y.size()) throw DomainError("output length differs from input length");
  double sq = 0.0;
  for (double v : y) {
    if (!std::isfinite(v)) throw DomainError("attraction_repulsion: non-finite input");
    sq += v * v;
  }
  const double gain = interaction_gain(sq, params);
  for (std::size_t d = 0; d < y.size(); ++d) out[d] = -y[d] * gain;
}

std::vector<double> attraction_repulsion(std::span<const double> y, const SwarmParams& params) {
  std::vector<double> out(y.size());
  attraction_repulsion(y, params, out);
  return out;
}

std::vector<double> interaction_field(const SwarmState& state, const SwarmParams& params) {
  require_matching(state, params);
  const std::size_t m = state.agents();
  const std::size_t dim = state.dim();
  const auto x = state.coords();

  std::vector<double> field(x.size(), 0.0);
  std::vector<double> diff(dim);
  for (std::size_t i = 0; i < m; ++i) {
    double* acc = field.data() + i * dim;
    const double* xi = x.data() + i * dim;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      const double* xj = x.data() + j * dim;
      double sq = 0.0;
      for (std::size_t d = 0; d < dim; ++d) {
        diff[d] = xi[d] - xj[d];
        sq += diff[d] * diff[d];
      }
      const double gain = interaction_gain(sq, params);
      for (std::size_t d = 0; d < dim; ++d) acc[d] += -diff[d] * gain;
    }
  }
  return field;
}

namespace {

// x + field, or the index of the first agent with a non-finite coordinate.
std::optional<std::size_t> advance(std::span<const double> x, const std::vector<double>& field,
                                   std::size_t dim, std::vector<double>& next) {
  next.resize(x.size());
  for (std::size_t idx = 0; idx < x.size(); ++idx) {
    next[idx] = x[idx] + field[idx];
    if (!std::isfinite(next[idx])) return idx / dim;
  }
  return std::nullopt;
}

}  // namespace

SwarmState step(const SwarmState& state, const SwarmParams& params) {
  const auto field = interaction_field(state, params);
  std::vector<double> next;
  if (auto bad = advance(state.coords(), field, state.dim(), next)) {
    throw DivergenceError(state.step() + 1, *bad);
  }
  return SwarmState(state.step() + 1, state.dim(), std::move(next));
}

std::vector<double> center(const SwarmState& state) {
  const std::size_t dim = state.dim();
  std::vector<double> mean(dim, 0.0);
  const auto x = state.coords();
  for (std::size_t off = 0; off < x.size(); off += dim) {
    for (std::size_t d = 0; d < dim; ++d) mean[d] += x[off + d];
  }
  const double inv = 1.0 / static_cast<double>(state.agents());
  for (double& v : mean) v *= inv;
  return mean;
}

std::vector<double> error_vectors(const SwarmState& state) {
  const auto mean = center(state);
  const std::size_t dim = state.dim();
  std::vector<double> e(state.coords().begin(), state.coords().end());
  for (std::size_t off = 0; off < e.size(); off += dim) {
    for (std::size_t d = 0; d < dim; ++d) e[off + d] -= mean[d];
  }
  return e;
}

double max_error_norm(const SwarmState& state) {
  return max_row_norm(error_vectors(state), state.dim());
}

Trajectory simulate(const SwarmState& initial, const SwarmParams& params, std::size_t max_steps,
                    const StopCriteria& stop) {
  require_matching(initial, params);
  const double guard = stop.guard_radius.value_or(1e6 * (max_error_norm(initial) + 1.0));

  Trajectory traj{.params = params, .seed = 0, .init = {}, .states = {}};
  traj.states.reserve(std::min<std::size_t>(max_steps, 1u << 16) + 1);
  traj.states.emplace_back(0, initial.dim(),
                           std::vector<double>(initial.coords().begin(), initial.coords().end()));

  std::vector<double> next;
  for (std::size_t k = 0;; ++k) {
    const SwarmState& current = traj.states.back();
    const auto field = interaction_field(current, params);
    if (max_row_norm(field, current.dim()) <= stop.residual_threshold) {
      traj.termination = TerminationReason::equilibrium_reached;
      break;
    }
    if (k == max_steps) {
      traj.termination = TerminationReason::max_steps;
      break;
    }
    if (advance(current.coords(), field, current.dim(), next)) {
      traj.termination = TerminationReason::diverged;
      break;
    }
    traj.states.emplace_back(k + 1, current.dim(), next);
    if (!(max_error_norm(traj.states.back()) <= guard)) {
      traj.termination = TerminationReason::diverged;
      break;
    }
  }
  return traj;
}

}  // namespace swarmagg
