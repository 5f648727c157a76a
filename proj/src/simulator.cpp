#include "mdplab/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "mdplab/errors.hpp"

namespace mdplab {

void SimConfig::validate() const {
  if (horizon < 1) throw ValidationError("horizon must be >= 1");
  if (replications < 1) throw ValidationError("replications must be >= 1");
  if (initial_state < 0 || initial_state >= model.num_states()) {
    throw ValidationError("initial state out of range");
  }
  if (rigged_prior) {
    if (rigged_prior->num_states() != model.num_states()) {
      throw ValidationError("rigged prior disagrees with the model on states");
    }
    for (int x = 0; x < model.num_states(); ++x) {
      if (rigged_prior->num_actions(x) != model.num_actions(x)) {
        throw ValidationError(
            "rigged prior disagrees with the model on actions at state " +
            std::to_string(x));
      }
    }
  }
}

int step_chain(const MdpModel& model, int x, int a, RngStream& rng) {
  const ProbVector& row = model.row(x, a);
  const double u = rng.next_uniform();
  double cum = 0.0;
  for (int y = 0; y < row.size(); ++y) {
    cum += row[y];
    if (u < cum) return y;
  }
  return row.size() - 1;  // rounding in the cumulative sum
}

CountTables inject_rigged_prior(
    const MdpShape& shape,
    const std::vector<std::vector<std::vector<std::int64_t>>>& counts) {
  return CountTables::from_transition_counts(shape, counts);
}

namespace {

// Sub-optimal (state, action) pairs of the true model with their
// per-activation losses, in fixed (x, a) order.
struct RegretWeights {
  struct Entry {
    int x;
    int a;
    double loss;
  };
  std::vector<Entry> entries;

  explicit RegretWeights(const OptimalityReport& truth) {
    for (std::size_t x = 0; x < truth.deltas.size(); ++x) {
      const auto& optimal = truth.optimal_actions[x];
      for (std::size_t a = 0; a < truth.deltas[x].size(); ++a) {
        const bool is_optimal =
            std::find(optimal.begin(), optimal.end(), static_cast<int>(a)) !=
            optimal.end();
        if (!is_optimal) {
          entries.push_back(Entry{static_cast<int>(x), static_cast<int>(a),
                                  truth.deltas[x][a]});
        }
      }
    }
  }
};

EpisodeResult run_episode_impl(const SimConfig& config, int replicate_index,
                               const RegretWeights& weights, Policy& policy) {
  const MdpShape shape = config.model.shape();
  CountTables counts =
      config.rigged_prior ? *config.rigged_prior : CountTables(shape);
  const std::int64_t start = counts.clock();
  if (start > config.horizon + 1) {
    throw ValidationError("rigged prior clock exceeds the horizon");
  }
  RngStream rng(config.base_seed + static_cast<std::uint64_t>(replicate_index));

  // Activations this episode only, net of any preloaded prior.
  std::vector<std::vector<std::int64_t>> tally;
  tally.reserve(static_cast<std::size_t>(shape.num_states));
  for (int x = 0; x < shape.num_states; ++x) {
    tally.emplace_back(static_cast<std::size_t>(shape.num_actions(x)), 0);
  }

  RegretSeries series;
  series.cumulative.assign(static_cast<std::size_t>(config.horizon), 0.0);

  int x = config.initial_state;
  for (std::int64_t t = start; t <= config.horizon; ++t) {
    const int a = policy.choose(x, counts, t, rng);
    if (a < 0 || a >= shape.num_actions(x)) {
      throw ValidationError("policy chose an inadmissible action");
    }
    ++tally[static_cast<std::size_t>(x)][static_cast<std::size_t>(a)];
    const int y = step_chain(config.model, x, a, rng);
    counts.record(x, a, y);

    // Same dot product as the audit path, so the two agree bit for bit.
    double regret = 0.0;
    for (const auto& e : weights.entries) {
      regret += static_cast<double>(
                    tally[static_cast<std::size_t>(e.x)][static_cast<std::size_t>(e.a)]) *
                e.loss;
    }
    series.cumulative[static_cast<std::size_t>(t - 1)] = regret;
    x = y;
  }
  return EpisodeResult{std::move(series), std::move(counts)};
}

}  // namespace

EpisodeResult run_episode_detailed(const SimConfig& config, int replicate_index,
                                   Policy* policy_override) {
  config.validate();
  const RegretWeights weights(analyze_model(config.model));
  std::unique_ptr<Policy> owned;
  Policy* policy = policy_override;
  if (!policy) {
    owned = make_policy(config.policy, config.model);
    policy = owned.get();
  }
  try {
    return run_episode_impl(config, replicate_index, weights, *policy);
  } catch (const SolverError& e) {
    throw SolverError("replicate " + std::to_string(replicate_index) + ": " +
                          e.what(),
                      e.residual());
  }
}

RegretSeries run_episode(const SimConfig& config, int replicate_index) {
  return run_episode_detailed(config, replicate_index).regret;
}

AggregateCurves run_experiment_with(const SimConfig& config,
                                    const PolicyFactory& factory,
                                    int max_threads) {
  config.validate();
  const RegretWeights weights(analyze_model(config.model));
  const int reps = config.replications;

  std::vector<RegretSeries> results(static_cast<std::size_t>(reps));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int workers = std::max(
      1, std::min(reps, max_threads > 0 ? max_threads : static_cast<int>(hw)));

  auto work = [&]() {
    for (;;) {
      const int rep = next.fetch_add(1);
      if (rep >= reps) return;
      try {
        auto policy = factory(config.model);
        results[static_cast<std::size_t>(rep)] =
            run_episode_impl(config, rep, weights, *policy).regret;
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& thread : pool) thread.join();
  }
  if (failure) std::rethrow_exception(failure);

  // Deterministic reduction in replicate order.
  const std::size_t horizon = static_cast<std::size_t>(config.horizon);
  AggregateCurves curves;
  curves.mean.assign(horizon, 0.0);
  curves.variance.assign(horizon, 0.0);
  curves.ci_half.assign(horizon, 0.0);
  for (int rep = 0; rep < reps; ++rep) {
    const auto& series = results[static_cast<std::size_t>(rep)].cumulative;
    for (std::size_t t = 0; t < horizon; ++t) curves.mean[t] += series[t];
  }
  for (std::size_t t = 0; t < horizon; ++t) curves.mean[t] /= reps;
  if (reps > 1) {
    for (int rep = 0; rep < reps; ++rep) {
      const auto& series = results[static_cast<std::size_t>(rep)].cumulative;
      for (std::size_t t = 0; t < horizon; ++t) {
        const double d = series[t] - curves.mean[t];
        curves.variance[t] += d * d;
      }
    }
    for (std::size_t t = 0; t < horizon; ++t) {
      curves.variance[t] /= (reps - 1);
      curves.ci_half[t] = 1.96 * std::sqrt(curves.variance[t] /
                                           static_cast<double>(reps));
    }
  }
  return curves;
}

AggregateCurves run_experiment(const SimConfig& config, int max_threads) {
  const PolicyKind kind = config.policy;
  return run_experiment_with(
      config,
      [kind](const MdpModel& model) { return make_policy(kind, model); },
      max_threads);
}

double regret_from_counts(const OptimalityReport& truth,
                          const CountTables& final_counts,
                          const CountTables* initial) {
  const RegretWeights weights(truth);
  double regret = 0.0;
  for (const auto& e : weights.entries) {
    const std::int64_t taken =
        final_counts.activations(e.x, e.a) -
        (initial ? initial->activations(e.x, e.a) : 0);
    regret += static_cast<double>(taken) * e.loss;
  }
  return regret;
}

}  // namespace mdplab
