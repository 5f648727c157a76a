#pragma once

#include <span>
#include <vector>

namespace mdplab {

// Probability vector over next states. Interior points (every component
// strictly positive) are the parameter space the estimators and KL programs
// work on; closure points may carry zeros and arise only as documented
// optimizer outputs.
class ProbVector {
 public:
  static constexpr double kSumTolerance = 1e-12;

  ProbVector() = default;

  // Validates strict positivity and unit sum.
  static ProbVector interior(std::vector<double> p);

  // Validates non-negativity and unit sum; zeros allowed.
  static ProbVector closure(std::vector<double> p);

  int size() const { return static_cast<int>(p_.size()); }
  double operator[](int i) const { return p_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& data() const { return p_; }
  bool strictly_positive() const;

  auto begin() const { return p_.begin(); }
  auto end() const { return p_.end(); }

 private:
  explicit ProbVector(std::vector<double> p) : p_(std::move(p)) {}

  std::vector<double> p_;
};

double dot(const ProbVector& p, std::span<const double> v);

}  // namespace mdplab
