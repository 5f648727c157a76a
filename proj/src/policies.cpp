#include "mdplab/policies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "mdplab/errors.hpp"
#include "mdplab/kl_opt.hpp"

namespace mdplab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// Argmax over scores; exact ties are broken uniformly at random, consuming
// one uniform only when there is an actual tie.
int argmax_random_ties(const std::vector<double>& scores, RngStream& rng) {
  double best = -kInf;
  int ties = 0;
  for (double s : scores) {
    if (s > best) {
      best = s;
      ties = 1;
    } else if (s == best) {
      ++ties;
    }
  }
  int pick = ties > 1 ? rng.next_index(ties) : 0;
  for (std::size_t a = 0; a < scores.size(); ++a) {
    if (scores[a] == best && pick-- == 0) return static_cast<int>(a);
  }
  return static_cast<int>(scores.size()) - 1;  // unreachable
}

}  // namespace

PolicyKind parse_policy_kind(const std::string& name) {
  if (name == "ucb") return PolicyKind::kUcb;
  if (name == "dmed") return PolicyKind::kDmed;
  if (name == "ps") return PolicyKind::kPs;
  if (name == "oracle") return PolicyKind::kOracle;
  throw ValidationError("unknown policy '" + name +
                        "' (expected ucb, dmed, ps, or oracle)");
}

std::string policy_kind_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kUcb: return "ucb";
    case PolicyKind::kDmed: return "dmed";
    case PolicyKind::kPs: return "ps";
    case PolicyKind::kOracle: return "oracle";
  }
  throw ValidationError("invalid policy kind");
}

SharedEstimates shared_estimates(const MdpShape& shape,
                                 const CountTables& counts) {
  const int s = shape.num_states;
  std::vector<std::vector<ProbVector>> rows(static_cast<std::size_t>(s));
  ActionSets good(static_cast<std::size_t>(s));
  for (int x = 0; x < s; ++x) {
    const int n = shape.num_actions(x);
    rows[static_cast<std::size_t>(x)].reserve(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
      rows[static_cast<std::size_t>(x)].push_back(counts.estimate_probs(x, a));
    }
    good[static_cast<std::size_t>(x)] = counts.good_action_set(x);
  }
  MdpModel estimated(shape.rewards, std::move(rows));
  GainBias solution = solve_optimality(estimated, &good);
  return SharedEstimates{std::move(estimated), std::move(good),
                         std::move(solution)};
}

int ucb_choose_from(const SharedEstimates& se, int x, const CountTables& counts,
                    std::int64_t t, RngStream& rng) {
  const MdpModel& est = se.estimated;
  const std::vector<double>& v = se.solution.bias;
  const double log_t = std::log(static_cast<double>(t));
  std::vector<double> indices(static_cast<std::size_t>(est.num_actions(x)));
  for (int a = 0; a < est.num_actions(x); ++a) {
    const std::int64_t pulls = counts.activations(x, a);
    const double radius = pulls > 0 ? log_t / static_cast<double>(pulls) : kInf;
    indices[static_cast<std::size_t>(a)] =
        ucb_index(est.row(x, a), v, est.reward(x, a), radius).value;
  }
  return argmax_random_ties(indices, rng);
}

int dmed_choose_from(const SharedEstimates& se, int x, const CountTables& counts,
                     std::int64_t t, RngStream& rng) {
  (void)rng;  // deterministic rule: lowest id on ties
  const MdpModel& est = se.estimated;
  const std::vector<double>& v = se.solution.bias;
  const int n = est.num_actions(x);

  // Estimated best action under the L values (lowest id wins ties).
  int best = 0;
  double best_l = -kInf;
  std::vector<double> l(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    l[static_cast<std::size_t>(a)] = l_value(est, x, a, est.row(x, a), v);
    if (l[static_cast<std::size_t>(a)] > best_l) {
      best_l = l[static_cast<std::size_t>(a)];
      best = a;
    }
  }

  // Discrepancy between the exploration budget ln t / K and the activations.
  const double log_t = std::log(static_cast<double>(t));
  int forced = -1;
  double forced_d = 0.0;
  for (int a = 0; a < n; ++a) {
    if (a == best) continue;
    const double threshold = best_l - est.reward(x, a);
    const double k = min_kl_above_threshold(est.row(x, a), v, threshold);
    const double required = log_t == 0.0 ? 0.0 : log_t / k;
    const double d = required - static_cast<double>(counts.activations(x, a));
    if (d > 0.0 && (forced < 0 || d > forced_d)) {
      forced = a;
      forced_d = d;
    }
  }
  return forced >= 0 ? forced : best;
}

int ps_choose_from(const SharedEstimates& se, int x, const CountTables& counts,
                   std::int64_t t, RngStream& rng) {
  (void)t;
  const MdpModel& est = se.estimated;
  const std::vector<double>& v = se.solution.bias;
  const int n = est.num_actions(x);
  const int s = est.num_states();
  std::vector<double> alpha(static_cast<std::size_t>(s));
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    for (int y = 0; y < s; ++y) {
      alpha[static_cast<std::size_t>(y)] =
          static_cast<double>(counts.transitions(x, a, y) + 1);
    }
    const ProbVector q = dirichlet_sample(alpha, rng);
    w[static_cast<std::size_t>(a)] = est.reward(x, a) + dot(q, v);
  }
  return argmax_random_ties(w, rng);
}

int ucb_choose(const MdpShape& shape, int x, const CountTables& counts,
               std::int64_t t, RngStream& rng) {
  return ucb_choose_from(shared_estimates(shape, counts), x, counts, t, rng);
}

int dmed_choose(const MdpShape& shape, int x, const CountTables& counts,
                std::int64_t t, RngStream& rng) {
  return dmed_choose_from(shared_estimates(shape, counts), x, counts, t, rng);
}

int ps_choose(const MdpShape& shape, int x, const CountTables& counts,
              std::int64_t t, RngStream& rng) {
  return ps_choose_from(shared_estimates(shape, counts), x, counts, t, rng);
}

int oracle_choose(const MdpModel& model, int x) {
  return analyze_model(model).optimal_actions[static_cast<std::size_t>(x)].front();
}

ProbVector dirichlet_sample(std::span<const double> alpha, RngStream& rng) {
  if (alpha.empty()) throw ValidationError("dirichlet_sample: empty alpha");
  std::vector<double> g(alpha.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (!(alpha[i] > 0.0)) {
      throw ValidationError("dirichlet_sample: alpha must be positive");
    }
    g[i] = rng.next_gamma(alpha[i]);
    sum += g[i];
  }
  for (double& x : g) x /= sum;
  return ProbVector::closure(std::move(g));
}

namespace {

class UcbPolicy : public Policy {
 public:
  explicit UcbPolicy(MdpShape shape) : shape_(std::move(shape)) {}
  int choose(int x, const CountTables& counts, std::int64_t t,
             RngStream& rng) override {
    return ucb_choose_from(shared_estimates(shape_, counts), x, counts, t, rng);
  }
  std::string_view name() const override { return "ucb"; }

 private:
  MdpShape shape_;
};

class DmedPolicy : public Policy {
 public:
  explicit DmedPolicy(MdpShape shape) : shape_(std::move(shape)) {}
  int choose(int x, const CountTables& counts, std::int64_t t,
             RngStream& rng) override {
    return dmed_choose_from(shared_estimates(shape_, counts), x, counts, t, rng);
  }
  std::string_view name() const override { return "dmed"; }

 private:
  MdpShape shape_;
};

class PsPolicy : public Policy {
 public:
  explicit PsPolicy(MdpShape shape) : shape_(std::move(shape)) {}
  int choose(int x, const CountTables& counts, std::int64_t t,
             RngStream& rng) override {
    return ps_choose_from(shared_estimates(shape_, counts), x, counts, t, rng);
  }
  std::string_view name() const override { return "ps"; }

 private:
  MdpShape shape_;
};

class OraclePolicy : public Policy {
 public:
  explicit OraclePolicy(const MdpModel& model) {
    const ActionSets optimal = optimal_action_set(model);
    actions_.reserve(optimal.size());
    for (const auto& set : optimal) actions_.push_back(set.front());
  }
  int choose(int x, const CountTables&, std::int64_t, RngStream&) override {
    return actions_[static_cast<std::size_t>(x)];
  }
  std::string_view name() const override { return "oracle"; }

 private:
  std::vector<int> actions_;
};

class UniformRandomPolicy : public Policy {
 public:
  int choose(int x, const CountTables& counts, std::int64_t,
             RngStream& rng) override {
    return rng.next_index(counts.num_actions(x));
  }
  std::string_view name() const override { return "random"; }
};

}  // namespace

std::unique_ptr<Policy> make_policy(PolicyKind kind, const MdpModel& model) {
  switch (kind) {
    case PolicyKind::kUcb: return std::make_unique<UcbPolicy>(model.shape());
    case PolicyKind::kDmed: return std::make_unique<DmedPolicy>(model.shape());
    case PolicyKind::kPs: return std::make_unique<PsPolicy>(model.shape());
    case PolicyKind::kOracle: return std::make_unique<OraclePolicy>(model);
  }
  throw ValidationError("invalid policy kind");
}

std::unique_ptr<Policy> make_uniform_random_policy() {
  return std::make_unique<UniformRandomPolicy>();
}

}  // namespace mdplab
