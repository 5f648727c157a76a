#pragma once

#include <cmath>
#include <vector>

#include "mdplab/experiment_spec.hpp"
#include "mdplab/model.hpp"
#include "mdplab/rng.hpp"

namespace mdplab::testing {

// The three-state benchmark model used across the suites.
inline MdpModel paper_model() { return ExperimentSpec::paper_example().model; }

// Random transition row kept away from the simplex boundary: a flat Dirichlet
// draw mixed with the uniform row, so every component is at least
// floor / num_states.
inline ProbVector random_interior_row(RngStream& rng, int num_states,
                                      double floor = 0.1) {
  std::vector<double> row(static_cast<std::size_t>(num_states));
  double sum = 0.0;
  for (double& x : row) {
    double u = rng.next_uniform();
    while (u <= 0.0) u = rng.next_uniform();
    x = -std::log(u);
    sum += x;
  }
  for (double& x : row) {
    x = (1.0 - floor) * (x / sum) + floor / num_states;
  }
  // Make the row sum exactly machine-1 by folding rounding into the largest
  // component.
  double total = 0.0;
  std::size_t largest = 0;
  for (std::size_t i = 0; i < row.size(); ++i) {
    total += row[i];
    if (row[i] > row[largest]) largest = i;
  }
  row[largest] += 1.0 - total;
  return ProbVector::interior(std::move(row));
}

inline MdpModel random_interior_model(RngStream& rng, int min_states = 2,
                                      int max_states = 5, int min_actions = 2,
                                      int max_actions = 3) {
  const int s = min_states + rng.next_index(max_states - min_states + 1);
  std::vector<std::vector<double>> rewards(static_cast<std::size_t>(s));
  std::vector<std::vector<ProbVector>> rows(static_cast<std::size_t>(s));
  for (int x = 0; x < s; ++x) {
    const int n = min_actions + rng.next_index(max_actions - min_actions + 1);
    for (int a = 0; a < n; ++a) {
      rewards[static_cast<std::size_t>(x)].push_back(rng.next_uniform());
      rows[static_cast<std::size_t>(x)].push_back(random_interior_row(rng, s));
    }
  }
  return MdpModel(std::move(rewards), std::move(rows));
}

}  // namespace mdplab::testing
