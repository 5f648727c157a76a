#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "mdplab/counts.hpp"
#include "mdplab/errors.hpp"
#include "mdplab/kl_opt.hpp"
#include "mdplab/policies.hpp"
#include "mdplab/simulator.hpp"
#include "support.hpp"

using namespace mdplab;
using mdplab::testing::paper_model;
using mdplab::testing::random_interior_model;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

CountTables proportional_counts(const MdpModel& model, double scale) {
  std::vector<std::vector<std::vector<std::int64_t>>> tensor(
      static_cast<std::size_t>(model.num_states()));
  for (int x = 0; x < model.num_states(); ++x) {
    tensor[static_cast<std::size_t>(x)].resize(
        static_cast<std::size_t>(model.num_actions(x)));
    for (int a = 0; a < model.num_actions(x); ++a) {
      for (int y = 0; y < model.num_states(); ++y) {
        tensor[static_cast<std::size_t>(x)][static_cast<std::size_t>(a)].push_back(
            static_cast<std::int64_t>(std::llround(scale * model.row(x, a)[y])));
      }
    }
  }
  return CountTables::from_transition_counts(model.shape(), tensor);
}

}  // namespace

TEST_CASE("policy names round-trip") {
  for (PolicyKind kind : {PolicyKind::kUcb, PolicyKind::kDmed, PolicyKind::kPs,
                          PolicyKind::kOracle}) {
    CHECK(parse_policy_kind(policy_kind_name(kind)) == kind);
  }
  CHECK_THROWS_AS(parse_policy_kind("greedy"), ValidationError);
}

TEST_CASE("shared estimates on fresh counts: uniform rows, full sets") {
  const MdpModel model = paper_model();
  const MdpShape shape = model.shape();
  const CountTables counts(shape);
  const SharedEstimates se = shared_estimates(shape, counts);

  for (int x = 0; x < 3; ++x) {
    for (int a = 0; a < 2; ++a) {
      for (int y = 0; y < 3; ++y) {
        CHECK(se.estimated.row(x, a)[y] == doctest::Approx(1.0 / 3));
      }
    }
    CHECK(se.good_actions[static_cast<std::size_t>(x)] ==
          std::vector<int>{0, 1});
  }

  // Same solution as solving the uniform-transition model directly.
  std::vector<std::vector<ProbVector>> uniform_rows(3);
  for (int x = 0; x < 3; ++x) {
    for (int a = 0; a < 2; ++a) {
      uniform_rows[static_cast<std::size_t>(x)].push_back(
          ProbVector::interior({1.0 / 3, 1.0 / 3, 1.0 / 3}));
    }
  }
  const MdpModel uniform(shape.rewards, std::move(uniform_rows));
  const GainBias expected = solve_optimality(uniform);
  CHECK(se.solution.gain == doctest::Approx(expected.gain).epsilon(1e-10));
  for (int x = 0; x < 3; ++x) {
    CHECK(se.solution.bias[static_cast<std::size_t>(x)] ==
          doctest::Approx(expected.bias[static_cast<std::size_t>(x)])
              .epsilon(1e-9));
  }
}

TEST_CASE("shared estimates converge on the true solution with heavy counts") {
  const MdpModel model = paper_model();
  const CountTables counts = proportional_counts(model, 1e6);
  const SharedEstimates se = shared_estimates(model.shape(), counts);
  const GainBias truth = solve_optimality(model);
  CHECK(std::abs(se.solution.gain - truth.gain) <= 1e-3);
}

TEST_CASE("singleton good sets reduce to policy evaluation") {
  const MdpModel model = paper_model();
  // Sample action 0 heavily and action 1 barely, everywhere: the good-set
  // filter keeps only action 0.
  const CountTables counts = CountTables::from_transition_counts(
      model.shape(),
      {{{40000, 30000, 30000}, {3, 2, 3}},
       {{50000, 25000, 25000}, {2, 4, 2}},
       {{10000, 45000, 45000}, {3, 3, 2}}});
  const SharedEstimates se = shared_estimates(model.shape(), counts);
  for (int x = 0; x < 3; ++x) {
    CHECK(se.good_actions[static_cast<std::size_t>(x)] == std::vector<int>{0});
  }
  const double eval = evaluate_policy_gain(se.estimated,
                                           DeterministicPolicy{{0, 0, 0}});
  CHECK(se.solution.gain == doctest::Approx(eval).epsilon(1e-8));
}

TEST_CASE("ucb: untried actions get the sentinel index") {
  // Equal rewards within each state, different across states, so the bias is
  // not constant and the sentinel strictly dominates tried actions.
  const MdpModel model({{0.2, 0.2}, {0.9, 0.9}},
                       {{ProbVector::interior({0.7, 0.3}),
                         ProbVector::interior({0.4, 0.6})},
                        {ProbVector::interior({0.5, 0.5}),
                         ProbVector::interior({0.2, 0.8})}});
  CountTables counts(model.shape());
  counts.record(0, 0, 1);
  counts.record(0, 0, 0);
  RngStream rng(1);
  CHECK(ucb_choose(model.shape(), 0, counts, counts.clock(), rng) == 1);
}

TEST_CASE("ucb: chooser agrees with hand-enumerated indices") {
  const MdpModel model = paper_model();
  const MdpShape shape = model.shape();
  CountTables counts(shape);
  counts.record(0, 0, 1);
  counts.record(1, 1, 0);
  counts.record(0, 0, 2);
  const std::int64_t t = counts.clock();

  const SharedEstimates se = shared_estimates(shape, counts);
  const double log_t = std::log(static_cast<double>(t));
  std::vector<double> expected;
  for (int a = 0; a < 2; ++a) {
    const std::int64_t pulls = counts.activations(0, a);
    if (pulls == 0) {
      const double vmax = *std::max_element(se.solution.bias.begin(),
                                            se.solution.bias.end());
      expected.push_back(model.reward(0, a) + vmax);
    } else {
      expected.push_back(ucb_index(se.estimated.row(0, a), se.solution.bias,
                                   model.reward(0, a),
                                   log_t / static_cast<double>(pulls))
                             .value);
    }
  }
  RngStream rng(3);
  const int chosen = ucb_choose(shape, 0, counts, t, rng);
  CHECK(chosen == (expected[1] > expected[0] ? 1 : 0));
}

TEST_CASE("ucb: constant bias leaves only the rewards") {
  // One state: the bias is the single gauge-fixed zero, so tried and untried
  // actions alike score reward + 0 and the best reward wins outright.
  const MdpModel model({{0.9, 0.2}}, {{ProbVector::interior({1.0}),
                                       ProbVector::interior({1.0})}});
  CountTables counts(model.shape());
  counts.record(0, 1, 0);  // only the weak action has data
  RngStream rng(2);
  CHECK(ucb_choose(model.shape(), 0, counts, counts.clock(), rng) == 0);

  // With the reward advantage flipped, the tried action keeps winning.
  const MdpModel flipped({{0.2, 0.9}}, {{ProbVector::interior({1.0}),
                                         ProbVector::interior({1.0})}});
  CountTables counts2(flipped.shape());
  counts2.record(0, 1, 0);
  CHECK(ucb_choose(flipped.shape(), 0, counts2, counts2.clock(), rng) == 1);
}

TEST_CASE("dmed: ample activation counts mean pure exploitation") {
  const MdpModel model = paper_model();
  const MdpShape shape = model.shape();
  const CountTables counts = proportional_counts(model, 300);
  const std::int64_t t = counts.clock();
  const SharedEstimates se = shared_estimates(shape, counts);
  RngStream rng(8);
  for (int x = 0; x < 3; ++x) {
    // Requirements ln t / K are tiny against hundreds of activations.
    double best = -kInf;
    int leader = -1;
    for (int a = 0; a < 2; ++a) {
      const double l =
          l_value(se.estimated, x, a, se.estimated.row(x, a), se.solution.bias);
      if (l > best) {
        best = l;
        leader = a;
      }
    }
    CHECK(dmed_choose(shape, x, counts, t, rng) == leader);
  }
}

TEST_CASE("ucb: zero radius everywhere means greedy on L") {
  const MdpModel model = paper_model();
  const CountTables counts = proportional_counts(model, 50);
  const SharedEstimates se = shared_estimates(model.shape(), counts);

  // t = 1 forces ln t = 0, so every tried action is scored at its point
  // estimate.
  RngStream rng(9);
  const int chosen = ucb_choose(model.shape(), 1, counts, 1, rng);
  double best = -kInf;
  int expected = -1;
  for (int a = 0; a < 2; ++a) {
    const double l =
        l_value(se.estimated, 1, a, se.estimated.row(1, a), se.solution.bias);
    if (l > best) {
      best = l;
      expected = a;
    }
  }
  CHECK(chosen == expected);
}

TEST_CASE("dmed: exploit when no discrepancy is positive") {
  const MdpModel model = paper_model();
  const MdpShape shape = model.shape();
  const CountTables counts(shape);
  RngStream rng(4);

  // t = 1: ln t = 0, every requirement is 0, all D <= 0.
  const SharedEstimates se = shared_estimates(shape, counts);
  double best = -kInf;
  int expected = -1;
  for (int a = 0; a < 2; ++a) {
    const double l =
        l_value(se.estimated, 0, a, se.estimated.row(0, a), se.solution.bias);
    if (l > best) {
      best = l;
      expected = a;
    }
  }
  CHECK(dmed_choose(shape, 0, counts, 1, rng) == expected);
}

TEST_CASE("dmed: infinite divergence keeps an action unforced") {
  // Max reward equal in both states: fresh estimates give a constant bias, so
  // beating the leader is impossible for the weaker action.
  const MdpModel model({{0.9, 0.1}, {0.9, 0.3}},
                       {{ProbVector::interior({0.5, 0.5}),
                         ProbVector::interior({0.5, 0.5})},
                        {ProbVector::interior({0.5, 0.5}),
                         ProbVector::interior({0.5, 0.5})}});
  const MdpShape shape = model.shape();
  const CountTables counts(shape);
  const SharedEstimates se = shared_estimates(shape, counts);

  const double best_l =
      l_value(se.estimated, 0, 0, se.estimated.row(0, 0), se.solution.bias);
  const double k = min_kl_above_threshold(
      se.estimated.row(0, 1), se.solution.bias, best_l - model.reward(0, 1));
  CHECK(k == kInf);

  RngStream rng(6);
  CHECK(dmed_choose(shape, 0, counts, 50, rng) == 0);
}

TEST_CASE("dmed: the largest positive discrepancy is forced") {
  const MdpModel model = paper_model();
  const MdpShape shape = model.shape();
  // Plenty of data on action 0, none on action 1: the near-tied alternative
  // accumulates a positive discrepancy.
  const CountTables counts = CountTables::from_transition_counts(
      shape, {{{40, 30, 30}, {0, 0, 0}},
              {{50, 25, 25}, {0, 0, 0}},
              {{10, 45, 45}, {0, 0, 0}}});
  const std::int64_t t = counts.clock();
  const SharedEstimates se = shared_estimates(shape, counts);

  // Recompute the rule by hand at the visited state.
  const int x = 0;
  std::vector<double> l(2);
  for (int a = 0; a < 2; ++a) {
    l[static_cast<std::size_t>(a)] =
        l_value(se.estimated, x, a, se.estimated.row(x, a), se.solution.bias);
  }
  const int leader = l[0] >= l[1] ? 0 : 1;
  const int other = 1 - leader;
  const double k = min_kl_above_threshold(
      se.estimated.row(x, other), se.solution.bias,
      l[static_cast<std::size_t>(leader)] - model.reward(x, other));
  const double d = std::log(static_cast<double>(t)) / k -
                   static_cast<double>(counts.activations(x, other));
  RngStream rng(10);
  const int chosen = dmed_choose(shape, x, counts, t, rng);
  CHECK(chosen == (d > 0.0 ? other : leader));
}

TEST_CASE("dirichlet sampling") {
  RngStream rng(2718);
  SUBCASE("always positive with unit sum") {
    for (int i = 0; i < 200; ++i) {
      const std::vector<double> alpha{0.5, 2.0, 7.5};
      const ProbVector q = dirichlet_sample(alpha, rng);
      double sum = 0.0;
      for (int y = 0; y < q.size(); ++y) {
        CHECK(q[y] > 0.0);
        sum += q[y];
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("flat alpha has mean 1/3 per component") {
    const int draws = 100000;
    const std::vector<double> alpha{1.0, 1.0, 1.0};
    std::vector<double> mean(3, 0.0);
    for (int i = 0; i < draws; ++i) {
      const ProbVector q = dirichlet_sample(alpha, rng);
      for (int y = 0; y < 3; ++y) mean[static_cast<std::size_t>(y)] += q[y];
    }
    // Var = 2/36, three sigma of the mean over 1e5 draws.
    const double band = 3.0 * std::sqrt(2.0 / 36.0 / draws);
    for (int y = 0; y < 3; ++y) {
      CHECK(std::abs(mean[static_cast<std::size_t>(y)] / draws - 1.0 / 3) <=
            band);
    }
  }
  SUBCASE("alpha (9,1) has mean 0.9 on the first component") {
    const int draws = 100000;
    const std::vector<double> alpha{9.0, 1.0};
    double mean = 0.0;
    for (int i = 0; i < draws; ++i) mean += dirichlet_sample(alpha, rng)[0];
    // Var = 9 / (100 * 11).
    const double band = 3.0 * std::sqrt(9.0 / 1100.0 / draws);
    CHECK(std::abs(mean / draws - 0.9) <= band);
  }
  SUBCASE("invalid alpha") {
    const std::vector<double> bad{1.0, 0.0};
    CHECK_THROWS_AS(dirichlet_sample(bad, rng), ValidationError);
  }
}

TEST_CASE("ps: posterior draws concentrate with heavy counts") {
  const MdpModel model = paper_model();
  const CountTables counts = proportional_counts(model, 1e5);
  const SharedEstimates se = shared_estimates(model.shape(), counts);

  const int x = 2;
  const int a = 0;
  const double target =
      l_value(se.estimated, x, a, se.estimated.row(x, a), se.solution.bias);
  RngStream rng(31);
  std::vector<double> alpha(3);
  for (int y = 0; y < 3; ++y) {
    alpha[static_cast<std::size_t>(y)] =
        static_cast<double>(counts.transitions(x, a, y) + 1);
  }
  const int draws = 2000;
  double mean = 0.0;
  double sq = 0.0;
  for (int i = 0; i < draws; ++i) {
    const ProbVector q = dirichlet_sample(alpha, rng);
    const double w = model.reward(x, a) + dot(q, se.solution.bias);
    mean += w;
    sq += w * w;
  }
  mean /= draws;
  const double var = sq / draws - mean * mean;
  CHECK(std::abs(mean - target) <= 5e-4);
  CHECK(std::sqrt(std::max(var, 0.0)) <= 5e-3);
}

TEST_CASE("ps: exchangeable actions are picked evenly") {
  // Two actions with identical rewards and rows.
  const MdpModel model({{0.5, 0.5}, {0.2, 0.2}},
                       {{ProbVector::interior({0.6, 0.4}),
                         ProbVector::interior({0.6, 0.4})},
                        {ProbVector::interior({0.3, 0.7}),
                         ProbVector::interior({0.3, 0.7})}});
  const MdpShape shape = model.shape();
  const CountTables counts(shape);
  RngStream rng(12);
  const int draws = 40000;
  int first = 0;
  for (int i = 0; i < draws; ++i) {
    if (ps_choose(shape, 0, counts, 1, rng) == 0) ++first;
  }
  const double freq = static_cast<double>(first) / draws;
  CHECK(std::abs(freq - 0.5) <= 4.0 * 0.5 / std::sqrt(double(draws)));
}

TEST_CASE("oracle picks the lowest-id optimal action") {
  CHECK(oracle_choose(paper_model(), 0) == 0);
  CHECK(oracle_choose(paper_model(), 1) == 1);
  CHECK(oracle_choose(paper_model(), 2) == 0);

  const MdpModel dup({{0.4, 0.4}}, {{ProbVector::interior({1.0}),
                                     ProbVector::interior({1.0})}});
  CHECK(oracle_choose(dup, 0) == 0);

  const MdpModel flat({{0.3, 0.3}, {0.3, 0.3}},
                      {{ProbVector::interior({0.5, 0.5}),
                        ProbVector::interior({0.1, 0.9})},
                       {ProbVector::interior({0.8, 0.2}),
                        ProbVector::interior({0.4, 0.6})}});
  CHECK(oracle_choose(flat, 0) == 0);
  CHECK(oracle_choose(flat, 1) == 0);
}

TEST_CASE("choices are deterministic given the seed") {
  const MdpModel model = paper_model();
  const MdpShape shape = model.shape();
  CountTables counts(shape);
  RngStream fill(77);
  for (int i = 0; i < 60; ++i) {
    counts.record(fill.next_index(3), fill.next_index(2), fill.next_index(3));
  }
  for (auto chooser : {ps_choose, ucb_choose, dmed_choose}) {
    RngStream r1(5);
    RngStream r2(5);
    for (int i = 0; i < 5; ++i) {
      CHECK(chooser(shape, i % 3, counts, counts.clock(), r1) ==
            chooser(shape, i % 3, counts, counts.clock(), r2));
    }
  }
}

TEST_CASE("adding a constant to all rewards never changes the choice") {
  RngStream rng(456);
  for (int trial = 0; trial < 25; ++trial) {
    const MdpModel model = random_interior_model(rng, 2, 4, 2, 3);
    const MdpShape shape = model.shape();
    MdpShape shifted = shape;
    for (auto& row : shifted.rewards) {
      for (double& r : row) r += 3.75;
    }

    CountTables counts(shape);
    RngStream fill(trial);
    for (int i = 0; i < 40; ++i) {
      const int x = fill.next_index(model.num_states());
      const int a = fill.next_index(model.num_actions(x));
      counts.record(x, a, fill.next_index(model.num_states()));
    }
    const int x = fill.next_index(model.num_states());
    const std::int64_t t = counts.clock();

    RngStream r1(900 + trial);
    RngStream r2(900 + trial);
    CHECK(ucb_choose(shape, x, counts, t, r1) ==
          ucb_choose(shifted, x, counts, t, r2));
    RngStream r3(901 + trial);
    RngStream r4(901 + trial);
    CHECK(ps_choose(shape, x, counts, t, r3) ==
          ps_choose(shifted, x, counts, t, r4));
    RngStream r5(902 + trial);
    RngStream r6(902 + trial);
    CHECK(dmed_choose(shape, x, counts, t, r5) ==
          dmed_choose(shifted, x, counts, t, r6));
  }
}

TEST_CASE("ucb tries every action of a state within its first visits") {
  // Rewards constant within each state (distinct across states), where the
  // untried-action sentinel strictly dominates any tried index.
  RngStream rng(1001);
  for (int trial = 0; trial < 8; ++trial) {
    const int s = 2 + rng.next_index(3);
    std::vector<std::vector<double>> rewards(static_cast<std::size_t>(s));
    std::vector<std::vector<ProbVector>> rows(static_cast<std::size_t>(s));
    for (int x = 0; x < s; ++x) {
      const int n = 2 + rng.next_index(2);
      for (int a = 0; a < n; ++a) {
        rewards[static_cast<std::size_t>(x)].push_back(0.1 + 0.2 * x);
        rows[static_cast<std::size_t>(x)].push_back(
            mdplab::testing::random_interior_row(rng, s));
      }
    }
    const MdpModel model(std::move(rewards), std::move(rows));
    const MdpShape shape = model.shape();

    CountTables counts(shape);
    RngStream episode_rng(5000 + trial);
    int x = 0;
    std::vector<std::int64_t> visits(static_cast<std::size_t>(s), 0);
    bool ok = true;
    for (std::int64_t t = 1; t <= 400; ++t) {
      const int a = ucb_choose(shape, x, counts, t, episode_rng);
      const int y = step_chain(model, x, a, episode_rng);
      counts.record(x, a, y);
      ++visits[static_cast<std::size_t>(x)];
      if (visits[static_cast<std::size_t>(x)] ==
          static_cast<std::int64_t>(model.num_actions(x))) {
        for (int b = 0; b < model.num_actions(x); ++b) {
          if (counts.activations(x, b) == 0) ok = false;
        }
      }
      x = y;
    }
    CHECK(ok);
  }
}
