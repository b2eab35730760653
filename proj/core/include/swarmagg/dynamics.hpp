#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "swarmagg/types.hpp"

namespace swarmagg {

/// Pairwise interaction g(y) = -y * (a - b * exp(-||y||^2 / c)).
///
/// Linear attraction at long range, exponentially decaying repulsion at short
/// range; vanishes at y = 0 and at ||y|| = delta. Writes into `out`, which must
/// have the same length as `y`. g(-y) == -g(y) bit-for-bit. Throws DomainError
/// on a non-finite input.
void attraction_repulsion(std::span<const double> y, const SwarmParams& params,
                          std::span<double> out);

std::vector<double> attraction_repulsion(std::span<const double> y, const SwarmParams& params);

/// Net interaction on every agent, sum_{j != i} g(x_i - x_j), agent-major like
/// SwarmState::coords(). The inner sum runs over j in ascending order.
std::vector<double> interaction_field(const SwarmState& state, const SwarmParams& params);

/// One synchronous update x_i(k+1) = x_i(k) + sum_{j != i} g(x_i(k) - x_j(k)).
/// All agents read the same input snapshot. Throws DivergenceError if any
/// resulting coordinate is non-finite, ConfigError if the state does not match
/// params.
SwarmState step(const SwarmState& state, const SwarmParams& params);

/// Mean position (1/M) sum_i x_i.
std::vector<double> center(const SwarmState& state);

/// e_i = x_i - center, agent-major.
std::vector<double> error_vectors(const SwarmState& state);

/// max_i ||e_i||.
double max_error_norm(const SwarmState& state);

/// Iterates step() from `initial`. Stops when the equilibrium residual of the
/// current state is at or below stop.residual_threshold, after max_steps
/// updates, or when the divergence guard trips. Divergence is reported via
/// Trajectory::termination, never thrown; non-finite states are not stored.
Trajectory simulate(const SwarmState& initial, const SwarmParams& params, std::size_t max_steps,
                    const StopCriteria& stop = {});

}  // namespace swarmagg
