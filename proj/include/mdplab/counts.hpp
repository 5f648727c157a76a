#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "mdplab/model.hpp"
#include "mdplab/prob_vector.hpp"

namespace mdplab {

// Visit, activation, and transition counters for one episode, plus the step
// clock. Owned by exactly one episode; never shared across episodes.
class CountTables {
 public:
  explicit CountTables(const MdpShape& shape);

  std::int64_t clock() const { return clock_; }
  std::int64_t state_visits(int x) const {
    return state_visits_[static_cast<std::size_t>(x)];
  }
  std::int64_t activations(int x, int a) const {
    return activations_[static_cast<std::size_t>(x)][static_cast<std::size_t>(a)];
  }
  std::int64_t transitions(int x, int a, int y) const {
    return transitions_[static_cast<std::size_t>(x)][static_cast<std::size_t>(a)]
                       [static_cast<std::size_t>(y)];
  }

  int num_states() const { return static_cast<int>(state_visits_.size()); }
  int num_actions(int x) const {
    return static_cast<int>(activations_[static_cast<std::size_t>(x)].size());
  }

  // One observed step: x, action a, landed in y. Bumps all three counters and
  // the clock.
  void record(int x, int a, int y);

  // Smoothed transition estimate (T_xay + 1) / (T_xa + s): strictly positive
  // for any counts, so downstream KL programs always get an interior point.
  ProbVector estimate_probs(int x, int a) const;

  // Actions of x sampled often enough to trust: { a : T_xa >= (ln T_x)^2 },
  // full action set when that filter would come up empty. ln taken as 0 for
  // T_x = 0.
  std::vector<int> good_action_set(int x) const;

  // Preload from a transition-count template counts[x][a][y]; activation and
  // visit counters are the row sums and the clock starts at 1 + total.
  static CountTables from_transition_counts(
      const MdpShape& shape,
      const std::vector<std::vector<std::vector<std::int64_t>>>& counts);

  nlohmann::json to_json() const;
  static CountTables from_json(const nlohmann::json& j);

 private:
  std::int64_t clock_ = 1;
  std::vector<std::int64_t> state_visits_;
  std::vector<std::vector<std::int64_t>> activations_;
  std::vector<std::vector<std::vector<std::int64_t>>> transitions_;
};

}  // namespace mdplab
