#include "mdplab/prob_vector.hpp"

#include <cmath>
#include <string>

#include "mdplab/errors.hpp"

namespace mdplab {

namespace {

void check_sum(const std::vector<double>& p) {
  if (p.empty()) throw ValidationError("probability vector must be nonempty");
  double sum = 0.0;
  for (double x : p) {
    if (!std::isfinite(x)) {
      throw ValidationError("probability vector has a non-finite component");
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > ProbVector::kSumTolerance) {
    throw ValidationError("probability vector sums to " + std::to_string(sum) +
                          ", expected 1");
  }
}

}  // namespace

ProbVector ProbVector::interior(std::vector<double> p) {
  check_sum(p);
  for (double x : p) {
    if (x <= 0.0) {
      throw ValidationError("interior probability vector has a component <= 0");
    }
  }
  return ProbVector(std::move(p));
}

ProbVector ProbVector::closure(std::vector<double> p) {
  check_sum(p);
  for (double x : p) {
    if (x < 0.0) {
      throw ValidationError("probability vector has a negative component");
    }
  }
  return ProbVector(std::move(p));
}

bool ProbVector::strictly_positive() const {
  for (double x : p_) {
    if (x <= 0.0) return false;
  }
  return !p_.empty();
}

double dot(const ProbVector& p, std::span<const double> v) {
  double sum = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    sum += p[i] * v[static_cast<std::size_t>(i)];
  }
  return sum;
}

}  // namespace mdplab
