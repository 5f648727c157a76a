#include "mdplab/counts.hpp"

#include <cmath>
#include <string>

#include "mdplab/errors.hpp"

namespace mdplab {

CountTables::CountTables(const MdpShape& shape) {
  const int s = shape.num_states;
  if (s <= 0) throw ValidationError("count tables need at least one state");
  state_visits_.assign(static_cast<std::size_t>(s), 0);
  activations_.resize(static_cast<std::size_t>(s));
  transitions_.resize(static_cast<std::size_t>(s));
  for (int x = 0; x < s; ++x) {
    const int n = shape.num_actions(x);
    activations_[static_cast<std::size_t>(x)].assign(static_cast<std::size_t>(n), 0);
    transitions_[static_cast<std::size_t>(x)].assign(
        static_cast<std::size_t>(n),
        std::vector<std::int64_t>(static_cast<std::size_t>(s), 0));
  }
}

void CountTables::record(int x, int a, int y) {
  if (x < 0 || x >= num_states() || y < 0 || y >= num_states() || a < 0 ||
      a >= num_actions(x)) {
    throw ValidationError("record: index out of range");
  }
  ++state_visits_[static_cast<std::size_t>(x)];
  ++activations_[static_cast<std::size_t>(x)][static_cast<std::size_t>(a)];
  ++transitions_[static_cast<std::size_t>(x)][static_cast<std::size_t>(a)]
                [static_cast<std::size_t>(y)];
  ++clock_;
}

ProbVector CountTables::estimate_probs(int x, int a) const {
  if (x < 0 || x >= num_states() || a < 0 || a >= num_actions(x)) {
    throw ValidationError("estimate_probs: index out of range");
  }
  const int s = num_states();
  const double denom = static_cast<double>(activations(x, a) + s);
  std::vector<double> p(static_cast<std::size_t>(s));
  for (int y = 0; y < s; ++y) {
    p[static_cast<std::size_t>(y)] =
        static_cast<double>(transitions(x, a, y) + 1) / denom;
  }
  return ProbVector::interior(std::move(p));
}

std::vector<int> CountTables::good_action_set(int x) const {
  if (x < 0 || x >= num_states()) {
    throw ValidationError("good_action_set: state out of range");
  }
  const std::int64_t visits = state_visits(x);
  const double log_visits = visits > 0 ? std::log(static_cast<double>(visits)) : 0.0;
  const double threshold = log_visits * log_visits;
  std::vector<int> good;
  for (int a = 0; a < num_actions(x); ++a) {
    if (static_cast<double>(activations(x, a)) >= threshold) {
      good.push_back(a);
    }
  }
  if (good.empty()) {
    good.resize(static_cast<std::size_t>(num_actions(x)));
    for (int a = 0; a < num_actions(x); ++a) good[static_cast<std::size_t>(a)] = a;
  }
  return good;
}

CountTables CountTables::from_transition_counts(
    const MdpShape& shape,
    const std::vector<std::vector<std::vector<std::int64_t>>>& counts) {
  CountTables tables(shape);
  if (static_cast<int>(counts.size()) != shape.num_states) {
    throw ValidationError("count template: wrong number of states");
  }
  std::int64_t total = 0;
  for (int x = 0; x < shape.num_states; ++x) {
    const auto& cx = counts[static_cast<std::size_t>(x)];
    if (static_cast<int>(cx.size()) != shape.num_actions(x)) {
      throw ValidationError("count template: wrong action count at state " +
                            std::to_string(x));
    }
    for (int a = 0; a < shape.num_actions(x); ++a) {
      const auto& row = cx[static_cast<std::size_t>(a)];
      if (static_cast<int>(row.size()) != shape.num_states) {
        throw ValidationError("count template: wrong row length at state " +
                              std::to_string(x) + ", action " + std::to_string(a));
      }
      for (int y = 0; y < shape.num_states; ++y) {
        const std::int64_t c = row[static_cast<std::size_t>(y)];
        if (c < 0) {
          throw ValidationError("count template: negative count at state " +
                                std::to_string(x) + ", action " +
                                std::to_string(a));
        }
        tables.transitions_[static_cast<std::size_t>(x)][static_cast<std::size_t>(a)]
                           [static_cast<std::size_t>(y)] = c;
        tables.activations_[static_cast<std::size_t>(x)][static_cast<std::size_t>(a)] += c;
        tables.state_visits_[static_cast<std::size_t>(x)] += c;
        total += c;
      }
    }
  }
  tables.clock_ = 1 + total;
  return tables;
}

nlohmann::json CountTables::to_json() const {
  nlohmann::json j;
  j["clock"] = clock_;
  j["state_visits"] = state_visits_;
  j["activations"] = activations_;
  j["transitions"] = transitions_;
  return j;
}

CountTables CountTables::from_json(const nlohmann::json& j) {
  MdpShape shape;
  const auto transitions =
      j.at("transitions").get<std::vector<std::vector<std::vector<std::int64_t>>>>();
  shape.num_states = static_cast<int>(transitions.size());
  shape.rewards.resize(transitions.size());
  for (std::size_t x = 0; x < transitions.size(); ++x) {
    shape.rewards[x].assign(transitions[x].size(), 0.0);
  }

  CountTables tables(shape);
  tables.transitions_ = transitions;
  tables.state_visits_ = j.at("state_visits").get<std::vector<std::int64_t>>();
  tables.activations_ =
      j.at("activations").get<std::vector<std::vector<std::int64_t>>>();
  tables.clock_ = j.at("clock").get<std::int64_t>();

  // Consistency: row sums must match the stored aggregates.
  if (tables.state_visits_.size() != transitions.size() ||
      tables.activations_.size() != transitions.size()) {
    throw ValidationError("count snapshot: table shapes disagree");
  }
  for (std::size_t x = 0; x < transitions.size(); ++x) {
    if (tables.activations_[x].size() != transitions[x].size()) {
      throw ValidationError("count snapshot: table shapes disagree");
    }
    std::int64_t visit_sum = 0;
    for (std::size_t a = 0; a < transitions[x].size(); ++a) {
      std::int64_t row_sum = 0;
      for (std::size_t y = 0; y < transitions[x][a].size(); ++y) {
        if (transitions[x][a].size() != transitions.size()) {
          throw ValidationError("count snapshot: transition row length");
        }
        if (transitions[x][a][y] < 0) {
          throw ValidationError("count snapshot: negative count");
        }
        row_sum += transitions[x][a][y];
      }
      if (row_sum != tables.activations_[x][a]) {
        throw ValidationError("count snapshot: activation count mismatch at state " +
                              std::to_string(x) + ", action " + std::to_string(a));
      }
      visit_sum += row_sum;
    }
    if (visit_sum != tables.state_visits_[x]) {
      throw ValidationError("count snapshot: visit count mismatch at state " +
                            std::to_string(x));
    }
  }
  if (tables.clock_ < 1) {
    throw ValidationError("count snapshot: clock must be >= 1");
  }
  return tables;
}

}  // namespace mdplab
