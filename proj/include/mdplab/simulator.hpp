#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "mdplab/counts.hpp"
#include "mdplab/model.hpp"
#include "mdplab/policies.hpp"
#include "mdplab/rng.hpp"
#include "mdplab/solver.hpp"

namespace mdplab {

struct SimConfig {
  MdpModel model;
  PolicyKind policy = PolicyKind::kUcb;
  std::int64_t horizon = 1;
  int replications = 1;
  std::uint64_t base_seed = 0;
  int initial_state = 0;
  std::optional<CountTables> rigged_prior;

  void validate() const;
};

// Cumulative regret R(1..T) of one episode: the per-activation losses of the
// sub-optimal actions taken so far, per the count decomposition of the regret.
struct RegretSeries {
  std::vector<double> cumulative;
};

// Across-replication aggregates per step.
struct AggregateCurves {
  std::vector<double> mean;
  std::vector<double> variance;   // sample variance
  std::vector<double> ci_half;    // 1.96 * std / sqrt(n)
};

// One chain transition: successor of x under action a, drawn by inverse CDF
// on the row. Consumes exactly one uniform.
int step_chain(const MdpModel& model, int x, int a, RngStream& rng);

// Count tables preloaded from a transition-count template counts[x][a][y];
// clock starts just after the preloaded activations.
CountTables inject_rigged_prior(
    const MdpShape& shape,
    const std::vector<std::vector<std::vector<std::int64_t>>>& counts);

struct EpisodeResult {
  RegretSeries regret;
  CountTables final_counts;
};

// One episode under the configured policy; replicate seed = base_seed + index.
RegretSeries run_episode(const SimConfig& config, int replicate_index);
EpisodeResult run_episode_detailed(const SimConfig& config, int replicate_index,
                                   Policy* policy_override = nullptr);

using PolicyFactory =
    std::function<std::unique_ptr<Policy>(const MdpModel& model)>;

// All replications (parallelized over worker threads), reduced in replicate
// order so the result is identical regardless of scheduling. max_threads = 0
// uses the hardware count.
AggregateCurves run_experiment(const SimConfig& config, int max_threads = 0);
AggregateCurves run_experiment_with(const SimConfig& config,
                                    const PolicyFactory& factory,
                                    int max_threads = 0);

// Regret recomputed from activation counts net of an optional initial table:
// the independent bookkeeping path for the audit.
double regret_from_counts(const OptimalityReport& truth,
                          const CountTables& final_counts,
                          const CountTables* initial = nullptr);

}  // namespace mdplab
