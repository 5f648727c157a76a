#pragma once

#include <vector>

#include "mdplab/prob_vector.hpp"

namespace mdplab {

// The part of a model an adaptive controller is allowed to see: state count,
// admissible actions, and the (known) reward table. No transition law.
// Actions are small integer ids scoped per state, 0 .. num_actions(x) - 1.
struct MdpShape {
  int num_states = 0;
  std::vector<std::vector<double>> rewards;  // rewards[x][a]

  int num_actions(int x) const {
    return static_cast<int>(rewards[static_cast<std::size_t>(x)].size());
  }
};

// Finite average-reward MDP. Every transition row is an interior probability
// vector, so the chain induced by any policy is irreducible and aperiodic.
class MdpModel {
 public:
  // rewards[x][a], transitions[x][a] = row over next states.
  MdpModel(std::vector<std::vector<double>> rewards,
           std::vector<std::vector<ProbVector>> transitions);

  int num_states() const { return num_states_; }
  int num_actions(int x) const {
    return static_cast<int>(rewards_[static_cast<std::size_t>(x)].size());
  }
  double reward(int x, int a) const {
    return rewards_[static_cast<std::size_t>(x)][static_cast<std::size_t>(a)];
  }
  const ProbVector& row(int x, int a) const {
    return transitions_[static_cast<std::size_t>(x)][static_cast<std::size_t>(a)];
  }
  const std::vector<std::vector<double>>& rewards() const { return rewards_; }

  MdpShape shape() const { return MdpShape{num_states_, rewards_}; }

 private:
  int num_states_;
  std::vector<std::vector<double>> rewards_;
  std::vector<std::vector<ProbVector>> transitions_;
};

// Solution of the average-reward optimality equations: long-run gain and the
// relative value of each state. Gauge: bias[0] == 0.
struct GainBias {
  double gain = 0.0;
  std::vector<double> bias;
};

struct DeterministicPolicy {
  std::vector<int> action_by_state;
};

}  // namespace mdplab
