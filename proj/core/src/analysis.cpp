#include "swarmagg/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

#include "swarmagg/dynamics.hpp"
#include "swarmagg/errors.hpp"

namespace swarmagg {
namespace {

double norm(std::span<const double> v) {
  double sq = 0.0;
  for (double x : v) sq += x * x;
  return std::sqrt(sq);
}

double squared_distance(std::span<const double> p, std::span<const double> q) {
  double sq = 0.0;
  for (std::size_t d = 0; d < p.size(); ++d) {
    const double diff = p[d] - q[d];
    sq += diff * diff;
  }
  return sq;
}

std::vector<double> row_norms(const std::vector<double>& buffer, std::size_t dim) {
  std::vector<double> out;
  out.reserve(buffer.size() / dim);
  for (std::size_t off = 0; off < buffer.size(); off += dim) {
    out.push_back(norm(std::span<const double>(buffer).subspan(off, dim)));
  }
  return out;
}

bool increased(double before, double after, double rel) { return after > before * (1.0 + rel); }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

double delta(const SwarmParams& params) {
  return std::sqrt(params.c() * std::log(params.b() / params.a()));
}

double epsilon(const SwarmParams& params) {
  return (params.b() / params.a()) * std::sqrt(params.c() / 2.0) * std::exp(-0.5);
}

double phi(const SwarmParams& params) {
  const double d = delta(params);
  return std::exp(-d * d / params.c());
}

std::uint64_t k_bar(const SwarmState& initial, const SwarmParams& params) {
  const double eps = epsilon(params);
  const double scale = params.a() * eps * eps;
  double worst = 0.0;
  for (double v : lyapunov_individual(initial)) worst = std::max(worst, v / scale);
  const double steps = std::ceil(worst);
  constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
  if (!(steps < static_cast<double>(cap))) return cap;
  return static_cast<std::uint64_t>(steps);
}

DerivedBounds derive_bounds(const SwarmState& initial, const SwarmParams& params) {
  return DerivedBounds{.delta = delta(params),
                       .epsilon = epsilon(params),
                       .k_bar = k_bar(initial, params),
                       .phi = phi(params)};
}

std::vector<double> lyapunov_individual(const SwarmState& state) {
  const auto e = error_vectors(state);
  std::vector<double> v;
  v.reserve(state.agents());
  for (double len : row_norms(e, state.dim())) v.push_back(0.5 * len * len);
  return v;
}

double lyapunov_pairwise(const SwarmState& state) {
  double total = 0.0;
  const std::size_t m = state.agents();
  for (std::size_t i = 0; i + 1 < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      total += squared_distance(state.position(i), state.position(j));
    }
  }
  return 0.5 * total;
}

bool is_free_agent(const SwarmState& state, std::size_t i, double delta) {
  if (i >= state.agents()) {
    throw std::out_of_range("agent index " + std::to_string(i) + " out of range for " +
                            std::to_string(state.agents()) + " agents");
  }
  for (std::size_t j = 0; j < state.agents(); ++j) {
    if (j == i) continue;
    if (!(std::sqrt(squared_distance(state.position(i), state.position(j))) > delta)) {
      return false;
    }
  }
  return true;
}

double equilibrium_residual(const SwarmState& state, const SwarmParams& params) {
  const auto field = interaction_field(state, params);
  double worst = 0.0;
  for (double len : row_norms(field, state.dim())) worst = std::max(worst, len);
  return worst;
}

BallEntry ball_entry_step(const Trajectory& trajectory, double epsilon) {
  if (trajectory.states.empty()) throw std::invalid_argument("ball_entry_step: empty trajectory");
  const std::size_t m = trajectory.states.front().agents();
  BallEntry entry;
  entry.per_agent.assign(m, std::nullopt);
  std::size_t pending = m;
  for (const auto& state : trajectory.states) {
    if (pending == 0) break;
    const auto lengths = row_norms(error_vectors(state), state.dim());
    for (std::size_t i = 0; i < m; ++i) {
      if (!entry.per_agent[i] && lengths[i] <= epsilon) {
        entry.per_agent[i] = state.step();
        --pending;
      }
    }
  }
  if (pending == 0) {
    std::size_t worst = 0;
    for (const auto& k : entry.per_agent) worst = std::max(worst, *k);
    entry.overall = worst;
  }
  return entry;
}

PsiMaximum psi_max_check(const SwarmParams& params, std::size_t grid_points) {
  if (grid_points < 3) throw DomainError("psi_max_check needs at least 3 grid points");
  const double c = params.c();
  const double span = 4.0 * std::sqrt(c);
  const double h = span / static_cast<double>(grid_points);
  auto psi = [c](double r) { return r * std::exp(-r * r / c); };

  std::size_t best = 1;
  double best_value = psi(h);
  for (std::size_t i = 2; i <= grid_points; ++i) {
    const double value = psi(h * static_cast<double>(i));
    if (value > best_value) {
      best_value = value;
      best = i;
    }
  }

  // d/dr psi = exp(-r^2/c) (1 - 2 r^2 / c); bisect on the sign of the bracket.
  double lo = h * static_cast<double>(best - 1);
  double hi = h * static_cast<double>(std::min(best + 1, grid_points));
  for (int iter = 0; iter < 50; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (1.0 - 2.0 * mid * mid / c > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double r = 0.5 * (lo + hi);
  return PsiMaximum{.argmax = r, .max = psi(r)};
}

const Verdict* AnalysisReport::verdict(const std::string& name) const {
  for (const auto& v : verdicts) {
    if (v.name == name) return &v;
  }
  return nullptr;
}

bool AnalysisReport::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

AnalysisReport analyze(const Trajectory& trajectory, const AnalysisTolerances& tol) {
  if (trajectory.states.empty()) throw std::invalid_argument("analyze: empty trajectory");
  const SwarmParams& params = trajectory.params;
  const auto& states = trajectory.states;
  const std::size_t count = states.size();
  const std::size_t m = params.agents();

  AnalysisReport report;
  report.bounds = derive_bounds(states.front(), params);
  report.validated_regime = params.validated_regime();
  report.termination = trajectory.termination;
  report.steps = count - 1;
  const double eps = report.bounds.epsilon;

  std::vector<std::vector<double>> error_norms(count);
  std::vector<std::vector<double>> centers(count);
  report.v_series.resize(count);
  report.j_series.resize(count);
  report.residual_series.resize(count);
  report.all_free.assign(count, true);

  for (std::size_t k = 0; k < count; ++k) {
    const SwarmState& s = states[k];
    centers[k] = center(s);
    error_norms[k] = row_norms(error_vectors(s), s.dim());
    auto& v = report.v_series[k];
    v.resize(m);
    for (std::size_t i = 0; i < m; ++i) v[i] = 0.5 * error_norms[k][i] * error_norms[k][i];

    double pair_sum = 0.0;
    for (std::size_t i = 0; i + 1 < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        const double sq = squared_distance(s.position(i), s.position(j));
        pair_sum += sq;
        // Compare distances, not squares, so the boundary agrees with is_free_agent.
        if (!(std::sqrt(sq) > report.bounds.delta)) {
          report.all_free[k] = false;
          if (report.free_agent_violations.size() < tol.max_listed_violations) {
            report.free_agent_violations.push_back({k, i, j});
          }
          ++report.free_agent_violation_count;
        }
      }
    }
    report.j_series[k] = 0.5 * pair_sum;
    report.residual_series[k] = equilibrium_residual(s, params);
  }

  // Per-step transitions.
  double worst_drift = 0.0;
  std::size_t worst_drift_step = 0;
  report.center_drift_series.reserve(count - 1);
  for (std::size_t k = 0; k + 1 < count; ++k) {
    double sq = 0.0;
    for (std::size_t d = 0; d < centers[k].size(); ++d) {
      const double diff = centers[k + 1][d] - centers[k][d];
      sq += diff * diff;
    }
    const double drift = std::sqrt(sq) / (1.0 + norm(centers[k]));
    report.center_drift_series.push_back(drift);
    if (drift > worst_drift) {
      worst_drift = drift;
      worst_drift_step = k;
    }

    for (std::size_t i = 0; i < m; ++i) {
      if (error_norms[k][i] > eps &&
          increased(report.v_series[k][i], report.v_series[k + 1][i], tol.monotone_rel)) {
        if (report.descent_violations.size() < tol.max_listed_violations) {
          report.descent_violations.push_back({k, i});
        }
        ++report.descent_violation_count;
      }
    }

    if (increased(report.j_series[k], report.j_series[k + 1], tol.monotone_rel)) {
      ++report.j_increase_count;
      if (report.all_free[k]) report.j_increases_while_free.push_back(k);
    }
  }

  report.entry = ball_entry_step(trajectory, eps);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& first = report.entry.per_agent[i];
    if (!first) continue;
    for (std::size_t k = *first + 1; k < count; ++k) {
      if (error_norms[k][i] > eps) ++report.post_entry_excursions;
    }
  }
  report.final_max_error =
      *std::max_element(error_norms.back().begin(), error_norms.back().end());
  report.final_residual = report.residual_series.back();

  const bool diverged = trajectory.termination == TerminationReason::diverged;
  const std::size_t last = count - 1;
  auto make = [&](std::string name) {
    Verdict v;
    v.name = std::move(name);
    v.applicable = report.validated_regime;
    return v;
  };

  {
    Verdict v = make("lemma1_stationary_center");
    v.pass = worst_drift <= tol.center_drift_rel;
    v.evidence_step = worst_drift_step;
    v.detail = "max relative center drift " + sci(worst_drift);
    report.verdicts.push_back(std::move(v));
  }
  {
    Verdict v = make("lemma2_descent");
    v.pass = report.descent_violation_count == 0;
    v.evidence_step = report.descent_violations.empty()
                          ? last
                          : report.descent_violations.front().step;
    v.detail = std::to_string(report.descent_violation_count) +
               " increases of V_i while ||e_i|| > epsilon";
    report.verdicts.push_back(std::move(v));
  }
  {
    Verdict v = make("theorem1_cohesion");
    if (diverged) {
      v.pass = false;
      v.evidence_step = last;
      v.detail = "trajectory diverged";
    } else if (!report.entry.overall) {
      v.pass = false;
      v.evidence_step = last;
      v.detail = "some agent never entered the epsilon ball";
    } else {
      v.pass = *report.entry.overall <= report.bounds.k_bar;
      v.evidence_step = *report.entry.overall;
      v.detail = "all agents inside epsilon ball by step " +
                 std::to_string(*report.entry.overall) + ", bound " +
                 std::to_string(report.bounds.k_bar);
    }
    report.verdicts.push_back(std::move(v));
  }
  {
    Verdict v = make("theorem2_stability");
    if (diverged) {
      v.pass = false;
      v.evidence_step = last;
      v.detail = "trajectory diverged";
    } else {
      const bool converged = report.final_residual <= tol.residual;
      const bool monotone = report.j_increases_while_free.empty();
      v.pass = converged && monotone;
      v.evidence_step = monotone ? last : report.j_increases_while_free.front();
      v.detail = "final residual " + sci(report.final_residual) + ", " +
                 std::to_string(report.j_increases_while_free.size()) +
                 " increases of J from free-agent states";
    }
    report.verdicts.push_back(std::move(v));
  }
  return report;
}

}  // namespace swarmagg
