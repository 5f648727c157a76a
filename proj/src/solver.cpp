#include "mdplab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mdplab/errors.hpp"

namespace mdplab {

namespace {

void check_action_sets(const MdpModel& model, const ActionSets& allowed) {
  if (static_cast<int>(allowed.size()) != model.num_states()) {
    throw ValidationError("allowed action sets: wrong number of states");
  }
  for (int x = 0; x < model.num_states(); ++x) {
    const auto& ax = allowed[static_cast<std::size_t>(x)];
    if (ax.empty()) {
      throw ValidationError("allowed action set empty at state " +
                            std::to_string(x));
    }
    for (int a : ax) {
      if (a < 0 || a >= model.num_actions(x)) {
        throw ValidationError("allowed action " + std::to_string(a) +
                              " out of range at state " + std::to_string(x));
      }
    }
  }
}

// max over allowed actions of r_x(a) + row . h
double bellman_max(const MdpModel& model, int x, const std::vector<int>* ax,
                   const std::vector<double>& h) {
  double best = -std::numeric_limits<double>::infinity();
  const int n = model.num_actions(x);
  for (int k = 0; k < (ax ? static_cast<int>(ax->size()) : n); ++k) {
    const int a = ax ? (*ax)[static_cast<std::size_t>(k)] : k;
    const ProbVector& row = model.row(x, a);
    double value = model.reward(x, a);
    for (int y = 0; y < model.num_states(); ++y) {
      value += row[y] * h[static_cast<std::size_t>(y)];
    }
    best = std::max(best, value);
  }
  return best;
}

}  // namespace

GainBias solve_optimality(const MdpModel& model, const ActionSets* allowed,
                          const SolveOptions& options) {
  if (allowed) check_action_sets(model, *allowed);

  const int s = model.num_states();
  std::vector<double> h(static_cast<std::size_t>(s), 0.0);
  std::vector<double> next(static_cast<std::size_t>(s), 0.0);

  double span = std::numeric_limits<double>::infinity();
  for (long iter = 0; iter < options.max_iterations; ++iter) {
    double diff_min = std::numeric_limits<double>::infinity();
    double diff_max = -std::numeric_limits<double>::infinity();
    for (int x = 0; x < s; ++x) {
      const std::vector<int>* ax =
          allowed ? &(*allowed)[static_cast<std::size_t>(x)] : nullptr;
      next[static_cast<std::size_t>(x)] = bellman_max(model, x, ax, h);
      const double d = next[static_cast<std::size_t>(x)] -
                       h[static_cast<std::size_t>(x)];
      diff_min = std::min(diff_min, d);
      diff_max = std::max(diff_max, d);
    }
    span = diff_max - diff_min;
    if (span < options.span_tolerance) {
      GainBias out;
      out.gain = 0.5 * (diff_max + diff_min);
      out.bias.resize(static_cast<std::size_t>(s));
      for (int x = 0; x < s; ++x) {
        out.bias[static_cast<std::size_t>(x)] =
            h[static_cast<std::size_t>(x)] - h[0];
      }
      return out;
    }
    // Re-anchor at state 0 to keep the iterates bounded.
    const double anchor = next[0];
    for (int x = 0; x < s; ++x) {
      h[static_cast<std::size_t>(x)] =
          next[static_cast<std::size_t>(x)] - anchor;
    }
  }
  throw SolverError("relative value iteration did not converge: span " +
                        std::to_string(span) + " after " +
                        std::to_string(options.max_iterations) + " iterations",
                    span);
}

double l_value(const MdpModel& model, int x, int a, const ProbVector& q,
               std::span<const double> v) {
  if (x < 0 || x >= model.num_states() || a < 0 || a >= model.num_actions(x)) {
    throw ValidationError("l_value: state or action out of range");
  }
  if (q.size() != model.num_states() ||
      static_cast<int>(v.size()) != model.num_states()) {
    throw ValidationError("l_value: dimension mismatch");
  }
  return model.reward(x, a) + dot(q, v);
}

OptimalityReport analyze_model(const MdpModel& model,
                               const SolveOptions& options) {
  OptimalityReport report;
  report.solution = solve_optimality(model, nullptr, options);

  const int s = model.num_states();
  report.l_values.resize(static_cast<std::size_t>(s));
  report.optimal_actions.resize(static_cast<std::size_t>(s));
  report.deltas.resize(static_cast<std::size_t>(s));
  for (int x = 0; x < s; ++x) {
    const int n = model.num_actions(x);
    auto& lx = report.l_values[static_cast<std::size_t>(x)];
    lx.resize(static_cast<std::size_t>(n));
    double best = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < n; ++a) {
      lx[static_cast<std::size_t>(a)] =
          l_value(model, x, a, model.row(x, a), report.solution.bias);
      best = std::max(best, lx[static_cast<std::size_t>(a)]);
    }
    auto& dx = report.deltas[static_cast<std::size_t>(x)];
    dx.resize(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
      dx[static_cast<std::size_t>(a)] = best - lx[static_cast<std::size_t>(a)];
      if (dx[static_cast<std::size_t>(a)] <= kTieTolerance) {
        report.optimal_actions[static_cast<std::size_t>(x)].push_back(a);
      }
    }
  }
  return report;
}

ActionSets optimal_action_set(const MdpModel& model) {
  return analyze_model(model).optimal_actions;
}

double delta(const MdpModel& model, int x, int a) {
  if (x < 0 || x >= model.num_states() || a < 0 || a >= model.num_actions(x)) {
    throw ValidationError("delta: state or action out of range");
  }
  const OptimalityReport report = analyze_model(model);
  return report.deltas[static_cast<std::size_t>(x)][static_cast<std::size_t>(a)];
}

namespace {

// Solves mu^T P = mu^T, sum mu = 1 by Gaussian elimination with partial
// pivoting on (P^T - I) with the last equation replaced by sum mu = 1.
std::vector<double> stationary_distribution(
    const std::vector<std::vector<double>>& chain_rows) {
  const int s = static_cast<int>(chain_rows.size());
  std::vector<std::vector<double>> a(
      static_cast<std::size_t>(s),
      std::vector<double>(static_cast<std::size_t>(s + 1), 0.0));
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) {
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          chain_rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] -
          (i == j ? 1.0 : 0.0);
    }
  }
  for (int j = 0; j < s; ++j) {
    a[static_cast<std::size_t>(s - 1)][static_cast<std::size_t>(j)] = 1.0;
  }
  a[static_cast<std::size_t>(s - 1)][static_cast<std::size_t>(s)] = 1.0;

  for (int col = 0; col < s; ++col) {
    int pivot = col;
    for (int r = col + 1; r < s; ++r) {
      if (std::abs(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) >
          std::abs(a[static_cast<std::size_t>(pivot)][static_cast<std::size_t>(col)])) {
        pivot = r;
      }
    }
    std::swap(a[static_cast<std::size_t>(col)], a[static_cast<std::size_t>(pivot)]);
    const double lead = a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
    if (lead == 0.0) {
      throw SolverError("stationary distribution: singular system", 0.0);
    }
    for (int r = 0; r < s; ++r) {
      if (r == col) continue;
      const double factor =
          a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] / lead;
      if (factor == 0.0) continue;
      for (int j = col; j <= s; ++j) {
        a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] -=
            factor * a[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)];
      }
    }
  }
  std::vector<double> mu(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) {
    mu[static_cast<std::size_t>(i)] =
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)] /
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
  }
  return mu;
}

}  // namespace

double evaluate_policy_gain(const MdpModel& model,
                            const DeterministicPolicy& policy) {
  const int s = model.num_states();
  if (static_cast<int>(policy.action_by_state.size()) != s) {
    throw ValidationError("policy has wrong number of states");
  }
  std::vector<std::vector<double>> chain(static_cast<std::size_t>(s));
  for (int x = 0; x < s; ++x) {
    const int a = policy.action_by_state[static_cast<std::size_t>(x)];
    if (a < 0 || a >= model.num_actions(x)) {
      throw ValidationError("policy action out of range at state " +
                            std::to_string(x));
    }
    chain[static_cast<std::size_t>(x)] = model.row(x, a).data();
  }
  const std::vector<double> mu = stationary_distribution(chain);
  double gain = 0.0;
  for (int x = 0; x < s; ++x) {
    gain += mu[static_cast<std::size_t>(x)] *
            model.reward(x, policy.action_by_state[static_cast<std::size_t>(x)]);
  }
  return gain;
}

BruteForceResult brute_force_gain(const MdpModel& model, long enumeration_cap) {
  const int s = model.num_states();
  long total = 1;
  for (int x = 0; x < s; ++x) {
    total *= model.num_actions(x);
    if (total > enumeration_cap) {
      throw ValidationError("policy enumeration exceeds cap of " +
                            std::to_string(enumeration_cap));
    }
  }

  BruteForceResult result;
  result.gain = -std::numeric_limits<double>::infinity();
  DeterministicPolicy policy;
  policy.action_by_state.assign(static_cast<std::size_t>(s), 0);
  for (long code = 0; code < total; ++code) {
    long rest = code;
    for (int x = 0; x < s; ++x) {
      policy.action_by_state[static_cast<std::size_t>(x)] =
          static_cast<int>(rest % model.num_actions(x));
      rest /= model.num_actions(x);
    }
    const double gain = evaluate_policy_gain(model, policy);
    if (gain > result.gain) {
      result.gain = gain;
      result.best = policy;
    }
  }
  return result;
}

}  // namespace mdplab
