#pragma once

#include <span>

#include "mdplab/prob_vector.hpp"

namespace mdplab {

// Kullback-Leibler divergence sum_y p_y ln(p_y / q_y). Returns +inf when some
// q_y = 0 carries p_y > 0. p is expected to be strictly positive.
double kl_divergence(const ProbVector& p, const ProbVector& q);

struct UcbIndexResult {
  double value = 0.0;
  ProbVector maximizer;
};

// Largest reward + q.v over the KL ball { q : I(p_hat, q) <= radius }.
//
// The maximizer has the tilted form q_y ~ p_hat_y / (nu - v_y) for a scalar
// nu > max v; nu is found by safeguarded bisection on the KL constraint
// (tolerance 1e-10, 200 iterations). radius = 0 returns p_hat itself and
// radius = +inf returns the unconstrained supremum reward + max v, attained
// at a closure point concentrated on the argmax of v.
UcbIndexResult ucb_index(const ProbVector& p_hat, std::span<const double> v,
                         double reward, double radius);

// Smallest I(p, q) subject to q.v >= threshold (the closure of the strict
// program; both share the same infimum). Returns 0 when p already satisfies
// the constraint and +inf when threshold >= max v, i.e. no point of the
// simplex reaches the threshold. Otherwise the active constraint is dualized:
// q_y ~ p_y / (1 - lambda (v_y - threshold)) with lambda >= 0 found by
// bisection (tolerance 1e-10, 200 iterations).
double min_kl_above_threshold(const ProbVector& p, std::span<const double> v,
                              double threshold);

}  // namespace mdplab
