// SPDX-License-Identifier: Apache-2.0
//
// Search for near-extremal f in a finite basis: maximize ||f|| / ||Q f||.
//
// The optimizer works on sampled values (basis functions are tabulated once on
// a grid, so every trial costs O(grid)). The returned ratio is recomputed from
// certified enclosures, sup_norm(f).lo / sup_norm(Q f).hi, so it never
// overstates the true ratio.

#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "rsineq/certificates.hpp"
#include "rsineq/expr.hpp"
#include "rsineq/families.hpp"
#include "rsineq/norms.hpp"

namespace rsineq {

enum class SharpnessBasis {
  Auto,  // Sinc when Q is a polynomial vanishing at 0, Trig otherwise
  Trig,  // 1, cos(k sigma x / m), sin(k sigma x / m), k = 1..m
  Sinc,  // sin(k sigma x / m) / x, k = 1..m
};

struct SharpnessResult {
  double best_ratio = 0.0;
  double constant = 0.0;
  std::vector<double> coefficients;
  double x0 = 0.0;  // where |f| peaks
  int iterations = 0;
  bool converged = false;
  std::string basis;
  ExpTypeFn best;
};

namespace detail {

inline std::vector<ExpTypeFn> sharpness_basis(SharpnessBasis b, double sigma, int m) {
  std::vector<ExpTypeFn> out;
  if (b == SharpnessBasis::Sinc) {
    for (int k = 1; k <= m; ++k) out.push_back(sin_over_x(sigma * k / m));
    return out;
  }
  out.push_back(constant(1.0));
  for (int k = 1; k <= m; ++k) {
    out.push_back(cosine(sigma * k / m));
    out.push_back(sine(sigma * k / m));
  }
  return out;
}

inline ExpTypeFn combine(const std::vector<ExpTypeFn>& basis, const std::vector<double>& c) {
  ExpTypeFn f = constant(0.0);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (c[i] != 0.0) f = add(f, scale(c[i], basis[i]));
  return f;
}

}  // namespace detail

/// Gradient ascent on a smoothed ratio with a growing norm exponent. Deterministic;
/// `seed` only perturbs the starting coefficients.
inline SharpnessResult sharpness_search(const ExpTypeFn& Q, double sigma, double tau, int m, int iterations,
                                        std::uint64_t seed = 0,
                                        SharpnessBasis basis_kind = SharpnessBasis::Auto,
                                        const GridSpec& grid = {}) {
  if (!(sigma > 0.0) || !(tau >= 0.0))
    throw HypothesisError("sigma > 0 and tau >= 0", "got sigma=" + std::to_string(sigma) +
                                                        ", tau=" + std::to_string(tau));
  if (m < 1) throw std::invalid_argument("sharpness_search: basis size must be >= 1");
  const Enclosure A = inf_quadratic(Q, sigma + tau, grid);
  if (!(A.lo > 0.0)) throw HypothesisError("A_{sigma+tau}(Q) > 0", "enclosure contains 0");

  if (basis_kind == SharpnessBasis::Auto) {
    auto p = as_polynomial(Q);
    basis_kind = p && p->size() > 1 && (*p)[0] == 0.0 ? SharpnessBasis::Sinc : SharpnessBasis::Trig;
  }
  const auto basis = detail::sharpness_basis(basis_kind, sigma, m);
  const std::size_t dim = basis.size();

  SharpnessResult res;
  res.constant = (sigma + tau) / std::sqrt(A.lo);
  res.basis = basis_kind == SharpnessBasis::Sinc ? "sinc" : "trig";

  // Tabulate basis and weight on a symmetric window; one period suffices when Q f is periodic.
  double W = grid.window > 0.0 ? grid.window : 50.0;
  if (auto P = multiply(Q, detail::combine(basis, std::vector<double>(dim, 1.0))).period();
      P && grid.window <= 0.0 && basis_kind == SharpnessBasis::Trig)
    W = *P / 2.0;
  const double h = detail::clamp_step(grid.step > 0.0 ? grid.step : default_step(sigma + tau), 2.0 * W, 2e5);
  const std::size_t N = static_cast<std::size_t>(std::ceil(2.0 * W / h)) + 1;
  std::vector<double> xs(N), qv(N);
  std::vector<std::vector<double>> bv(dim, std::vector<double>(N));
  for (std::size_t i = 0; i < N; ++i) {
    xs[i] = -W + 2.0 * W * static_cast<double>(i) / static_cast<double>(N - 1);
    qv[i] = Q(xs[i]);
    for (std::size_t j = 0; j < dim; ++j) bv[j][i] = basis[j](xs[i]);
  }
  std::vector<double> fv(N);
  auto ratio_of = [&](const std::vector<double>& vals) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      num = std::max(num, std::abs(vals[i]));
      den = std::max(den, std::abs(qv[i] * vals[i]));
    }
    return den > 0.0 ? num / den : 0.0;
  };

  // For fixed x0 the ratio f(x0) / ||Q f|| is quasi-concave in c. The sup norm
  // is replaced by a mean p-norm whose exponent doubles on a schedule, and the
  // peak x0 is re-chosen as argmax |f| whenever p changes.
  std::vector<double> c(dim, 0.0);
  c[0] = 1.0;
  Rng rng(seed);
  std::uniform_real_distribution<double> jitter(-0.01, 0.01);
  for (std::size_t j = 1; j < dim; ++j) c[j] = jitter(rng);
  for (std::size_t i = 0; i < N; ++i) {
    fv[i] = 0.0;
    for (std::size_t j = 0; j < dim; ++j) fv[i] += c[j] * bv[j][i];
  }
  std::size_t i0 = N / 2;
  std::vector<double> best_c = c;
  double best_true = ratio_of(fv);

  auto smoothed = [&](const std::vector<double>& vals, double p, double& norm) {
    double mx = 0.0;
    for (std::size_t i = 0; i < N; ++i) mx = std::max(mx, std::abs(qv[i] * vals[i]));
    if (mx == 0.0) return norm = 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < N; ++i) acc += std::pow(std::abs(qv[i] * vals[i]) / mx, p);
    norm = mx * std::pow(acc / static_cast<double>(N), 1.0 / p);
    return vals[i0] / norm;
  };
  auto reanchor = [&] {
    std::size_t arg = i0;
    for (std::size_t i = 0; i < N; ++i)
      if (std::abs(fv[i]) > std::abs(fv[arg]) * (1.0 + 1e-12)) arg = i;
    i0 = arg;
    if (fv[i0] < 0.0) {
      for (auto& v : c) v = -v;
      for (auto& v : fv) v = -v;
    }
  };

  const int levels = 11;  // p = 4 .. 4096
  const int per_level = std::max(1, iterations / levels);
  double p = 4.0;
  double step = 0.25;
  std::vector<double> grad(dim), trial_c(dim), trial(N);
  int it = 0;
  for (; it < iterations; ++it) {
    if (it > 0 && it % per_level == 0 && p < 4096.0) {
      p *= 2.0;
      reanchor();
      step = 0.25;
    }
    double norm = 0.0;
    const double J = smoothed(fv, p, norm);
    if (norm == 0.0) break;
    // dJ/dc_j = b_j(x0)/norm - J/norm * d norm/d c_j
    double mx = 0.0;
    for (std::size_t i = 0; i < N; ++i) mx = std::max(mx, std::abs(qv[i] * fv[i]));
    std::vector<double> w(N);
    double wsum = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double g = qv[i] * fv[i];
      w[i] = std::pow(std::abs(g) / mx, p - 1.0) * (g < 0.0 ? -1.0 : 1.0) * qv[i];
      wsum += std::pow(std::abs(g) / mx, p);
    }
    // d norm / d c_j = (mx / wsum) * sum_i w_i b_j(x_i), using the same scaling.
    double gn = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      double d = 0.0;
      for (std::size_t i = 0; i < N; ++i) d += w[i] * bv[j][i];
      d *= norm / (mx * wsum);
      grad[j] = bv[j][i0] / norm - J / norm * d;
      gn += grad[j] * grad[j];
    }
    gn = std::sqrt(gn);
    if (!(gn > 0.0)) continue;
    double cn = 0.0;
    for (double v : c) cn = std::max(cn, std::abs(v));
    bool moved = false;
    for (int tries = 0; tries < 8 && !moved; ++tries) {
      for (std::size_t j = 0; j < dim; ++j) trial_c[j] = step * cn * grad[j] / gn;
      for (std::size_t i = 0; i < N; ++i) {
        double v = fv[i];
        for (std::size_t j = 0; j < dim; ++j) v += trial_c[j] * bv[j][i];
        trial[i] = v;
      }
      double tn = 0.0;
      if (smoothed(trial, p, tn) > J) {
        fv.swap(trial);
        for (std::size_t j = 0; j < dim; ++j) c[j] += trial_c[j];
        step = std::min(step * 1.5, 1.0);
        moved = true;
      } else {
        step *= 0.5;
      }
    }
    const double r = ratio_of(fv);
    if (r > best_true) {
      best_true = r;
      best_c = c;
    }
  }
  c = best_c;
  res.iterations = it;
  res.converged = step < 1e-6;

  res.coefficients = c;
  res.best = detail::combine(basis, c);
  const Enclosure fn = sup_norm(res.best, grid);
  const Enclosure qf = sup_norm(multiply(Q, res.best), grid);
  res.x0 = fn.witness;
  res.best_ratio = qf.hi > 0.0 ? fn.lo / qf.hi : 0.0;
  return res;
}

}  // namespace rsineq
