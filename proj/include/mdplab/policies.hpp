#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "mdplab/counts.hpp"
#include "mdplab/model.hpp"
#include "mdplab/rng.hpp"
#include "mdplab/solver.hpp"

namespace mdplab {

enum class PolicyKind { kUcb, kDmed, kPs, kOracle };

// "ucb" | "dmed" | "ps" | "oracle"
PolicyKind parse_policy_kind(const std::string& name);
std::string policy_kind_name(PolicyKind kind);

// Everything the three adaptive policies derive from the counts before
// choosing: the smoothed transition estimates assembled into a model, the
// per-state good action sets, and the optimality-equation solution on those
// restricted sets (phi-hat and v-hat).
struct SharedEstimates {
  MdpModel estimated;
  ActionSets good_actions;
  GainBias solution;
};

SharedEstimates shared_estimates(const MdpShape& shape,
                                 const CountTables& counts);

// Decision rules. The *_from variants reuse already-built estimates; the
// plain forms rebuild them from the counts. t is the current step clock.
int ucb_choose_from(const SharedEstimates& se, int x, const CountTables& counts,
                    std::int64_t t, RngStream& rng);
int dmed_choose_from(const SharedEstimates& se, int x, const CountTables& counts,
                     std::int64_t t, RngStream& rng);
int ps_choose_from(const SharedEstimates& se, int x, const CountTables& counts,
                   std::int64_t t, RngStream& rng);

int ucb_choose(const MdpShape& shape, int x, const CountTables& counts,
               std::int64_t t, RngStream& rng);
int dmed_choose(const MdpShape& shape, int x, const CountTables& counts,
                std::int64_t t, RngStream& rng);
int ps_choose(const MdpShape& shape, int x, const CountTables& counts,
              std::int64_t t, RngStream& rng);

// Complete-information baseline: lowest-id gain-optimal action of x.
int oracle_choose(const MdpModel& model, int x);

// Dirichlet draw via normalized unit-scale gamma variables.
ProbVector dirichlet_sample(std::span<const double> alpha, RngStream& rng);

// One decision rule bound to one episode.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual int choose(int x, const CountTables& counts, std::int64_t t,
                     RngStream& rng) = 0;
  virtual std::string_view name() const = 0;
};

std::unique_ptr<Policy> make_policy(PolicyKind kind, const MdpModel& model);

// Uniform-over-actions baseline used as the linear-regret contrast in tests.
std::unique_ptr<Policy> make_uniform_random_policy();

}  // namespace mdplab
