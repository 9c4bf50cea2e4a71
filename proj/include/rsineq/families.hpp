// SPDX-License-Identifier: Apache-2.0
//
// Seeded random function families used by the fuzz checks and the CLI suite.

#pragma once

#include <random>
#include <vector>

#include "rsineq/expr.hpp"

namespace rsineq {

using Rng = std::mt19937_64;

/// sum_{k=0..m} a_k cos(k gamma x / m) + b_k sin(k gamma x / m), coefficients uniform in [-1, 1].
/// The top frequency always carries a nonzero coefficient, so the type is exactly gamma.
inline ExpTypeFn random_trig_poly(Rng& rng, double gamma, int m) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ExpTypeFn f = constant(u(rng));
  for (int k = 1; k <= m; ++k) {
    const double w = gamma * k / m;
    double a = u(rng);
    const double b = u(rng);
    if (k == m && a == 0.0 && b == 0.0) a = 1.0;
    f = add(f, add(scale(a, cosine(w)), scale(b, sine(w))));
  }
  return f;
}

/// sum_{k=1..m} c_k sin(k sigma x / m) / x. Multiplying by x gives a bounded sine polynomial.
inline ExpTypeFn random_sinc_sum(Rng& rng, double sigma, int m) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ExpTypeFn f = constant(0.0);
  for (int k = 1; k <= m; ++k) f = add(f, scale(u(rng), sin_over_x(sigma * k / m)));
  return f;
}

/// Monomial coefficients of a degree-n polynomial, uniform in [-1, 1], leading one nonzero.
inline std::vector<double> random_poly_coeffs(Rng& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  for (auto& v : c) v = u(rng);
  if (c.back() == 0.0) c.back() = 1.0;
  return c;
}

}  // namespace rsineq
