#include "mdplab/rng.hpp"

#include <cmath>

#include "mdplab/errors.hpp"

namespace mdplab {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double RngStream::next_normal() {
  // 1 - u keeps the argument of log strictly positive.
  const double u1 = 1.0 - next_uniform();
  const double u2 = next_uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

double RngStream::next_gamma(double alpha) {
  if (!(alpha > 0.0)) {
    throw ValidationError("gamma sample requires alpha > 0");
  }
  if (alpha < 1.0) {
    // Boost: Gamma(a) = Gamma(a + 1) * U^(1/a).
    double u = next_uniform();
    while (u <= 0.0) u = next_uniform();
    return next_gamma(alpha + 1.0) * std::pow(u, 1.0 / alpha);
  }
  const double d = alpha - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = next_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = next_uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
      return d * v;
    }
  }
}

int RngStream::next_index(int n) {
  if (n <= 0) throw ValidationError("next_index requires n > 0");
  const int k = static_cast<int>(next_uniform() * static_cast<double>(n));
  return k >= n ? n - 1 : k;
}

}  // namespace mdplab
