#include "mdplab/model.hpp"

#include <cmath>
#include <string>

#include "mdplab/errors.hpp"

namespace mdplab {

MdpModel::MdpModel(std::vector<std::vector<double>> rewards,
                   std::vector<std::vector<ProbVector>> transitions)
    : num_states_(static_cast<int>(rewards.size())),
      rewards_(std::move(rewards)),
      transitions_(std::move(transitions)) {
  if (num_states_ == 0) throw ValidationError("model has no states");
  if (transitions_.size() != rewards_.size()) {
    throw ValidationError("reward and transition tables disagree on states");
  }
  for (int x = 0; x < num_states_; ++x) {
    const auto& rx = rewards_[static_cast<std::size_t>(x)];
    const auto& tx = transitions_[static_cast<std::size_t>(x)];
    if (rx.empty()) {
      throw ValidationError("state " + std::to_string(x) +
                            " has no admissible action");
    }
    if (tx.size() != rx.size()) {
      throw ValidationError("state " + std::to_string(x) +
                            ": reward and transition tables disagree on actions");
    }
    for (std::size_t a = 0; a < rx.size(); ++a) {
      if (!std::isfinite(rx[a])) {
        throw ValidationError("state " + std::to_string(x) + ", action " +
                              std::to_string(a) + ": reward is not finite");
      }
      if (tx[a].size() != num_states_) {
        throw ValidationError("state " + std::to_string(x) + ", action " +
                              std::to_string(a) +
                              ": transition row has wrong length");
      }
      if (!tx[a].strictly_positive()) {
        throw ValidationError("state " + std::to_string(x) + ", action " +
                              std::to_string(a) +
                              ": transition row leaves the open simplex");
      }
    }
  }
}

}  // namespace mdplab
