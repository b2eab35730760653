#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "swarmagg/types.hpp"

namespace swarmagg {

/// Closed-form quantities of the model.
struct DerivedBounds {
  double delta = 0.0;    // sign-change radius sqrt(c ln(b/a))
  double epsilon = 0.0;  // cohesion radius (b/a) sqrt(c/2) exp(-1/2)
  std::uint64_t k_bar = 0;
  double phi = 0.0;      // exp(-delta^2/c), equal to a/b
};

double delta(const SwarmParams& params);
double epsilon(const SwarmParams& params);
double phi(const SwarmParams& params);

/// max_i ceil(V_i(0) / (a * epsilon^2)).
std::uint64_t k_bar(const SwarmState& initial, const SwarmParams& params);

DerivedBounds derive_bounds(const SwarmState& initial, const SwarmParams& params);

/// V_i = 0.5 ||e_i||^2 for every agent.
std::vector<double> lyapunov_individual(const SwarmState& state);

/// J = 0.5 * sum_{i<j} ||x_i - x_j||^2.
double lyapunov_pairwise(const SwarmState& state);

/// ||x_i - x_j|| > delta for every j != i. Throws std::out_of_range on a bad index.
bool is_free_agent(const SwarmState& state, std::size_t i, double delta);

/// max_i ||sum_{j != i} g(x_i - x_j)||; zero exactly on the equilibrium set.
double equilibrium_residual(const SwarmState& state, const SwarmParams& params);

struct BallEntry {
  std::vector<std::optional<std::size_t>> per_agent;  // first k with ||e_i(k)|| <= epsilon
  std::optional<std::size_t> overall;                 // max over agents; absent if any never enters
};

BallEntry ball_entry_step(const Trajectory& trajectory, double epsilon);

struct PsiMaximum {
  double argmax = 0.0;
  double max = 0.0;
};

/// Numerically maximizes r * exp(-r^2 / c) over (0, 4 sqrt(c)] with a uniform
/// grid followed by bisection on the sign of the derivative. Throws
/// DomainError if grid_points < 3.
PsiMaximum psi_max_check(const SwarmParams& params, std::size_t grid_points = 10000);

// Tolerances used by analyze().
struct AnalysisTolerances {
  double center_drift_rel = 1e-9;  // per step, relative to 1 + ||center||
  double residual = 1e-8;          // final equilibrium residual for the stability verdict
  double monotone_rel = 1e-12;     // slack when checking V_i and J for increases
  std::size_t max_listed_violations = 1000;
};

struct DescentViolation {
  std::size_t step;  // V_i(step + 1) > V_i(step)
  std::size_t agent;
  bool operator==(const DescentViolation&) const = default;
};

struct FreeAgentViolation {
  std::size_t step;
  std::size_t i;
  std::size_t j;  // i < j, ||x_i - x_j|| <= delta
  bool operator==(const FreeAgentViolation&) const = default;
};

struct Verdict {
  std::string name;     // lemma1_stationary_center, lemma2_descent, theorem1_cohesion, theorem2_stability
  bool pass = false;
  bool applicable = false;  // params in the validated regime
  std::optional<std::size_t> evidence_step;
  std::string detail;
};

struct AnalysisReport {
  DerivedBounds bounds;
  bool validated_regime = false;
  TerminationReason termination = TerminationReason::max_steps;
  std::size_t steps = 0;

  std::vector<std::vector<double>> v_series;  // [k][i]
  std::vector<double> j_series;
  std::vector<double> residual_series;
  std::vector<double> center_drift_series;  // relative drift of step k -> k+1; size steps

  BallEntry entry;
  std::size_t post_entry_excursions = 0;  // (k, i) with k after entry_i and ||e_i(k)|| > epsilon
  double final_max_error = 0.0;
  double final_residual = 0.0;

  std::vector<DescentViolation> descent_violations;
  std::size_t descent_violation_count = 0;

  std::vector<FreeAgentViolation> free_agent_violations;  // first max_listed_violations only
  std::size_t free_agent_violation_count = 0;
  std::vector<bool> all_free;  // per state: every agent is a free agent

  std::vector<std::size_t> j_increases_while_free;  // k with all_free[k] and J(k+1) > J(k)
  std::size_t j_increase_count = 0;                  // any k with J(k+1) > J(k)

  std::vector<Verdict> verdicts;

  const Verdict* verdict(const std::string& name) const;
  /// Every verdict passes.
  bool all_pass() const;
};

AnalysisReport analyze(const Trajectory& trajectory, const AnalysisTolerances& tol = {});

}  // namespace swarmagg
