#pragma once

#include <span>
#include <vector>

#include "mdplab/model.hpp"

namespace mdplab {

// Allowed action indices per state, ascending.
using ActionSets = std::vector<std::vector<int>>;

// Two actions count as tied for optimal when their L values are within this
// absolute tolerance.
inline constexpr double kTieTolerance = 1e-9;

struct SolveOptions {
  double span_tolerance = 1e-10;
  long max_iterations = 1000000;
};

// Solves the average-reward optimality equations by relative value iteration,
// optionally restricted to a subset of actions per state. Stops when the span
// seminorm of the successive-difference vector falls below the tolerance;
// throws SolverError (carrying the residual) at the iteration cap.
GainBias solve_optimality(const MdpModel& model,
                          const ActionSets* allowed = nullptr,
                          const SolveOptions& options = {});

// Value of taking action a in state x under transition vector q:
// r_x(a) + sum_y q_y v_y.
double l_value(const MdpModel& model, int x, int a, const ProbVector& q,
               std::span<const double> v);

// Per-state set of gain-optimal actions: L within kTieTolerance of the
// per-state maximum under the true rows and the solved bias.
ActionSets optimal_action_set(const MdpModel& model);

// Average loss per activation of (x, a) relative to the best action in x.
double delta(const MdpModel& model, int x, int a);

// One solve of the model and everything the laboratory derives from it.
struct OptimalityReport {
  GainBias solution;
  std::vector<std::vector<double>> l_values;  // [x][a] under true rows
  ActionSets optimal_actions;                 // ascending ids per state
  std::vector<std::vector<double>> deltas;    // [x][a], zero on optimal actions
};

OptimalityReport analyze_model(const MdpModel& model,
                               const SolveOptions& options = {});

struct BruteForceResult {
  double gain = 0.0;
  DeterministicPolicy best;
};

// Enumerates every deterministic policy and scores each one through the
// stationary distribution of its chain. Independent of solve_optimality by
// construction; doubles as the test oracle for it.
BruteForceResult brute_force_gain(const MdpModel& model,
                                  long enumeration_cap = 1000000);

// Long-run average reward of one fixed policy (stationary-distribution route).
double evaluate_policy_gain(const MdpModel& model,
                            const DeterministicPolicy& policy);

}  // namespace mdplab
