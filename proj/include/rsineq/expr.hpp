// SPDX-License-Identifier: Apache-2.0
//
// Closed-form entire functions of exponential type.
//
// An ExpTypeFn is an immutable expression tree over the node kinds below.
// Every node carries metadata computed at construction: an upper bound on
// the exponential type, an optional period, an optional 1/|x| decay envelope
// and a crude bound on sup |f| used when composing envelopes.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rsineq {

enum class NodeKind {
  Const,     // c
  Var,       // x
  Poly,      // sum c_k x^k
  Sin,       // sin(a x + b)
  Cos,       // cos(a x + b)
  SinRatio,  // sin(a x) / sin(b x), a/b a positive integer
  SinOverX,  // d^k/dx^k [sin(a (x - c)) / (x - c)]
  Sum,
  Product,
  Scale,  // c * child
};

/// |f(x)| <= scale / (|x| - radius) whenever |x| >= radius + 1.
struct DecayEnvelope {
  double scale = 0.0;
  double radius = 0.0;
};

/// Raised when a quotient would have real poles (e.g. sin(3x)/sin(2x)).
class NonEntireError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {
struct Node;
}

class ExpTypeFn {
 public:
  ExpTypeFn();  // the zero function

  NodeKind kind() const;
  double type_bound() const;
  bool real_valued() const;
  std::optional<double> period() const;
  bool is_constant() const;
  std::optional<DecayEnvelope> decay() const;
  /// Upper bound for sup |f| on the real line; +inf when unknown or unbounded.
  double abs_bound() const;

  // Payload. Meaning depends on kind(); see NodeKind.
  double value() const;   // Const value, Scale factor
  double freq() const;    // a of Sin/Cos/SinRatio/SinOverX
  double phase() const;   // b of Sin/Cos
  double denom_freq() const;  // b of SinRatio
  int order() const;      // derivative order of SinOverX
  double center() const;  // shift of SinOverX
  std::span<const double> coeffs() const;
  std::span<const ExpTypeFn> children() const;

  bool is_zero() const;

  double operator()(double x) const;

  explicit ExpTypeFn(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}
  const detail::Node& node() const { return *node_; }

 private:
  std::shared_ptr<const detail::Node> node_;
};

namespace detail {

struct Node {
  NodeKind kind = NodeKind::Const;
  double c = 0.0;  // Const value / Scale factor / SinOverX center
  double a = 0.0;
  double b = 0.0;
  int k = 0;  // SinOverX order, SinRatio integer quotient
  std::vector<double> coeffs;
  std::vector<ExpTypeFn> children;

  double type_bound = 0.0;
  bool real_valued = true;
  bool constant = false;
  std::optional<double> period;
  std::optional<DecayEnvelope> decay;
  double abs_bound = std::numeric_limits<double>::infinity();
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kPi = std::numbers::pi;

/// Smallest common period of p and q with a small integer multiplier.
inline std::optional<double> common_period(double p, double q) {
  for (int m = 1; m <= 64; ++m) {
    const double t = m * p / q;
    const double n = std::round(t);
    if (n >= 1.0 && std::abs(t - n) <= 1e-9 * t) return m * p;
  }
  return std::nullopt;
}

inline std::vector<double> trim(std::vector<double> c) {
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
  if (c.empty()) c.push_back(0.0);
  return c;
}

inline double horner(std::span<const double> c, double x) {
  double r = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
  return r;
}

// k-th derivative of sin(a y)/y.
inline double sinc_derivative(double a, int k, double y) {
  if (a == 0.0) return 0.0;
  const double ay = a * y;
  if (k == 0) {
    if (std::abs(ay) < 1e-4) {
      const double z = ay * ay;
      return a * (1.0 - z / 6.0 * (1.0 - z / 20.0 * (1.0 - z / 42.0)));
    }
    return std::sin(ay) / y;
  }
  if (std::abs(ay) < std::max(4.0, 2.0 * k)) {
    // sin(a y)/y = sum_j (-1)^j a^(2j+1) y^(2j) / (2j+1)!, differentiated termwise.
    double sum = 0.0;
    const int j0 = (k + 1) / 2;
    for (int j = j0; j < j0 + 60; ++j) {
      const int p = 2 * j - k;
      // a^(2j+1) (2j)!/((2j-k)! (2j+1)!) y^p = a^(k+1) (a y)^p / ((2j+1) p!)
      double term = std::pow(a, k + 1) / (2.0 * j + 1.0);
      for (int i = 1; i <= p; ++i) term *= ay / i;
      if (j % 2) term = -term;
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum) && p > 2 * std::abs(ay)) break;
    }
    return sum;
  }
  // y g_k + k g_(k-1) = a^k sin(a y + k pi/2)
  double g = std::sin(ay) / y;
  double ak = 1.0;
  for (int j = 1; j <= k; ++j) {
    ak *= a;
    g = (ak * std::sin(ay + j * kPi / 2.0) - j * g) / y;
  }
  return g;
}

// sin(n u)/sin(u), evaluated by series near the zeros of sin(u).
inline double sin_ratio_eval(int n, double u) {
  const double m = std::round(u / kPi);
  const double r = u - m * kPi;
  if (std::abs(r) < 1e-4) {
    const long long mm = static_cast<long long>(m);
    const double sign = ((mm * (n - 1)) % 2 != 0) ? -1.0 : 1.0;
    if (r == 0.0) return sign * n;
    const double nr = n * r;
    const double num = nr - nr * nr * nr / 6.0 + std::pow(nr, 5) / 120.0 - std::pow(nr, 7) / 5040.0;
    const double den = r - r * r * r / 6.0 + std::pow(r, 5) / 120.0 - std::pow(r, 7) / 5040.0;
    return sign * num / den;
  }
  return std::sin(n * u) / std::sin(u);
}

inline double eval(const Node& n, double x) {
  switch (n.kind) {
    case NodeKind::Const:
      return n.c;
    case NodeKind::Var:
      return x;
    case NodeKind::Poly:
      return horner(n.coeffs, x);
    case NodeKind::Sin:
      return std::sin(n.a * x + n.b);
    case NodeKind::Cos:
      return std::cos(n.a * x + n.b);
    case NodeKind::SinRatio:
      return sin_ratio_eval(n.k, n.b * x);
    case NodeKind::SinOverX:
      return sinc_derivative(n.a, n.k, x - n.c);
    case NodeKind::Sum: {
      double s = 0.0;
      for (const auto& ch : n.children) s += ch(x);
      return s;
    }
    case NodeKind::Product: {
      double p = 1.0;
      for (const auto& ch : n.children) p *= ch(x);
      return p;
    }
    case NodeKind::Scale:
      return n.c * n.children.front()(x);
  }
  return 0.0;
}

inline std::shared_ptr<Node> make(NodeKind kind) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  return n;
}

inline ExpTypeFn finish(std::shared_ptr<Node> n) { return ExpTypeFn(std::move(n)); }

}  // namespace detail

inline ExpTypeFn::ExpTypeFn() {
  auto n = detail::make(NodeKind::Const);
  n->constant = true;
  n->abs_bound = 0.0;
  n->decay = DecayEnvelope{};
  node_ = std::move(n);
}

inline NodeKind ExpTypeFn::kind() const { return node_->kind; }
inline double ExpTypeFn::type_bound() const { return node_->type_bound; }
inline bool ExpTypeFn::real_valued() const { return node_->real_valued; }
inline std::optional<double> ExpTypeFn::period() const { return node_->period; }
inline bool ExpTypeFn::is_constant() const { return node_->constant; }
inline std::optional<DecayEnvelope> ExpTypeFn::decay() const { return node_->decay; }
inline double ExpTypeFn::abs_bound() const { return node_->abs_bound; }
inline double ExpTypeFn::value() const { return node_->c; }
inline double ExpTypeFn::freq() const { return node_->a; }
inline double ExpTypeFn::phase() const { return node_->b; }
inline double ExpTypeFn::denom_freq() const { return node_->b; }
inline int ExpTypeFn::order() const { return node_->k; }
inline double ExpTypeFn::center() const { return node_->c; }
inline std::span<const double> ExpTypeFn::coeffs() const { return node_->coeffs; }
inline std::span<const ExpTypeFn> ExpTypeFn::children() const { return node_->children; }
inline double ExpTypeFn::operator()(double x) const { return detail::eval(*node_, x); }
inline bool ExpTypeFn::is_zero() const {
  return node_->kind == NodeKind::Const && node_->c == 0.0;
}

// ---------------------------------------------------------------------------
// Raw factories. These build exactly the requested node.

inline ExpTypeFn constant(double c) {
  auto n = detail::make(NodeKind::Const);
  n->c = c;
  n->constant = true;
  n->abs_bound = std::abs(c);
  if (c == 0.0) n->decay = DecayEnvelope{};
  return detail::finish(std::move(n));
}

inline ExpTypeFn variable() {
  auto n = detail::make(NodeKind::Var);
  return detail::finish(std::move(n));
}

/// Polynomial with ascending coefficients.
inline ExpTypeFn poly(std::vector<double> coeffs) {
  auto n = detail::make(NodeKind::Poly);
  n->coeffs = detail::trim(std::move(coeffs));
  if (n->coeffs.size() == 1) {
    n->constant = true;
    n->abs_bound = std::abs(n->coeffs[0]);
    if (n->coeffs[0] == 0.0) n->decay = DecayEnvelope{};
  }
  return detail::finish(std::move(n));
}

namespace detail {
inline ExpTypeFn trig(NodeKind kind, double a, double b) {
  auto n = make(kind);
  n->a = a;
  n->b = b;
  n->type_bound = std::abs(a);
  n->abs_bound = 1.0;
  if (a == 0.0) {
    n->constant = true;
    n->abs_bound = std::abs(kind == NodeKind::Sin ? std::sin(b) : std::cos(b));
  } else {
    n->period = 2.0 * kPi / std::abs(a);
  }
  return finish(std::move(n));
}
}  // namespace detail

inline ExpTypeFn sine(double a, double b = 0.0) { return detail::trig(NodeKind::Sin, a, b); }
inline ExpTypeFn cosine(double a, double b = 0.0) { return detail::trig(NodeKind::Cos, a, b); }

/// sin(a x)/sin(b x). Entire only when a/b is a positive integer n; the
/// result then equals sum_{j<n} cos((n-1-2j) b x) and has exact type (n-1)|b|.
inline ExpTypeFn sin_ratio(double a, double b) {
  if (b == 0.0 || !std::isfinite(a) || !std::isfinite(b)) {
    throw NonEntireError("sinratio: denominator frequency must be finite and nonzero");
  }
  const double r = a / b;
  const double n = std::round(r);
  if (n < 1.0 || std::abs(r - n) > 1e-12 * std::max(1.0, std::abs(r))) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "sin(%.17g x)/sin(%.17g x) has real poles: %.17g is not a positive integer", a,
                  b, r);
    throw NonEntireError(buf);
  }
  auto node = detail::make(NodeKind::SinRatio);
  node->a = std::abs(a);
  node->b = std::abs(b);
  node->k = static_cast<int>(n);
  node->type_bound = (n - 1.0) * node->b;
  node->abs_bound = n;
  if (node->k == 1) {
    node->constant = true;
  } else {
    node->period = (node->k % 2 ? 1.0 : 2.0) * detail::kPi / node->b;
  }
  return detail::finish(std::move(node));
}

/// k-th derivative of sin(a (x - c))/(x - c).
inline ExpTypeFn sin_over_x(double a, int order = 0, double center = 0.0) {
  if (order < 0) throw std::invalid_argument("sinoverx: negative derivative order");
  auto n = detail::make(NodeKind::SinOverX);
  n->a = a;
  n->k = order;
  n->c = center;
  n->type_bound = std::abs(a);
  const double aa = std::abs(a);
  n->abs_bound = std::pow(aa, order + 1) / (order + 1);
  n->decay = DecayEnvelope{order == 0 ? 1.0 : 2.0 * std::pow(aa, order), std::abs(center)};
  if (a == 0.0) {
    n->constant = true;
    n->decay = DecayEnvelope{};
  }
  return detail::finish(std::move(n));
}

namespace detail {

// Period/constant metadata for Sum and Product nodes.
inline void combine_periods(Node& n) {
  bool all_const = true;
  std::optional<double> p;
  bool periodic = true;
  for (const auto& ch : n.children) {
    if (ch.is_constant()) continue;
    all_const = false;
    if (!ch.period()) {
      periodic = false;
      break;
    }
    if (!p) {
      p = ch.period();
    } else {
      p = common_period(*p, *ch.period());
      if (!p) {
        periodic = false;
        break;
      }
    }
  }
  n.constant = all_const;
  if (!all_const && periodic) n.period = p;
}

}  // namespace detail

inline ExpTypeFn sum(std::vector<ExpTypeFn> children) {
  if (children.empty()) return constant(0.0);
  auto n = detail::make(NodeKind::Sum);
  n->children = std::move(children);
  double tb = 0.0;
  double bound = 0.0;
  DecayEnvelope env;
  bool decays = true;
  for (const auto& ch : n->children) {
    tb = std::max(tb, ch.type_bound());
    n->real_valued = n->real_valued && ch.real_valued();
    bound += ch.abs_bound();
    if (auto d = ch.decay()) {
      env.scale += d->scale;
      env.radius = std::max(env.radius, d->radius);
    } else {
      decays = false;
    }
  }
  n->type_bound = tb;
  n->abs_bound = bound;
  if (decays) n->decay = env;
  detail::combine_periods(*n);
  return detail::finish(std::move(n));
}

inline ExpTypeFn product(std::vector<ExpTypeFn> children) {
  if (children.empty()) return constant(1.0);
  auto n = detail::make(NodeKind::Product);
  n->children = std::move(children);
  double tb = 0.0;
  double bound = 1.0;
  for (const auto& ch : n->children) {
    tb += ch.type_bound();
    n->real_valued = n->real_valued && ch.real_valued();
    bound *= ch.abs_bound();
  }
  if (std::isnan(bound)) bound = detail::kInf;
  n->type_bound = tb;
  n->abs_bound = bound;
  // One decaying factor times bounded factors decays.
  for (std::size_t i = 0; i < n->children.size(); ++i) {
    auto d = n->children[i].decay();
    if (!d) continue;
    double rest = 1.0;
    for (std::size_t j = 0; j < n->children.size(); ++j) {
      if (j != i) rest *= n->children[j].abs_bound();
    }
    if (std::isfinite(rest)) {
      n->decay = DecayEnvelope{d->scale * rest, d->radius};
      break;
    }
  }
  detail::combine_periods(*n);
  return detail::finish(std::move(n));
}

inline ExpTypeFn scaled(double c, const ExpTypeFn& child) {
  auto n = detail::make(NodeKind::Scale);
  n->c = c;
  n->children = {child};
  n->type_bound = child.type_bound();
  n->real_valued = child.real_valued();
  n->constant = child.is_constant();
  n->period = child.period();
  n->abs_bound = std::abs(c) * child.abs_bound();
  if (std::isnan(n->abs_bound)) n->abs_bound = detail::kInf;
  if (auto d = child.decay()) n->decay = DecayEnvelope{std::abs(c) * d->scale, d->radius};
  return detail::finish(std::move(n));
}

/// Same tree with the root's type bound replaced by `bound` (must not be tighter).
inline ExpTypeFn with_type_bound(const ExpTypeFn& f, double bound) {
  auto n = std::make_shared<detail::Node>(f.node());
  n->type_bound = std::max(bound, n->type_bound);
  return detail::finish(std::move(n));
}

// ---------------------------------------------------------------------------
// Simplifying builders.

/// Coefficients when f is a polynomial (including constants), else nullopt.
inline std::optional<std::vector<double>> as_polynomial(const ExpTypeFn& f) {
  switch (f.kind()) {
    case NodeKind::Const:
      return std::vector<double>{f.value()};
    case NodeKind::Var:
      return std::vector<double>{0.0, 1.0};
    case NodeKind::Poly:
      return std::vector<double>(f.coeffs().begin(), f.coeffs().end());
    case NodeKind::Sin:
    case NodeKind::Cos:
    case NodeKind::SinRatio:
    case NodeKind::SinOverX:
      if (f.is_constant()) return std::vector<double>{f(0.0)};
      return std::nullopt;
    case NodeKind::Sum: {
      std::vector<double> acc{0.0};
      for (const auto& ch : f.children()) {
        auto p = as_polynomial(ch);
        if (!p) return std::nullopt;
        if (p->size() > acc.size()) acc.resize(p->size(), 0.0);
        for (std::size_t i = 0; i < p->size(); ++i) acc[i] += (*p)[i];
      }
      return detail::trim(acc);
    }
    case NodeKind::Product: {
      std::vector<double> acc{1.0};
      for (const auto& ch : f.children()) {
        auto p = as_polynomial(ch);
        if (!p) return std::nullopt;
        std::vector<double> next(acc.size() + p->size() - 1, 0.0);
        for (std::size_t i = 0; i < acc.size(); ++i)
          for (std::size_t j = 0; j < p->size(); ++j) next[i + j] += acc[i] * (*p)[j];
        acc = std::move(next);
      }
      return detail::trim(acc);
    }
    case NodeKind::Scale: {
      auto p = as_polynomial(f.children().front());
      if (!p) return std::nullopt;
      for (auto& c : *p) c *= f.value();
      return detail::trim(*p);
    }
  }
  return std::nullopt;
}

inline ExpTypeFn from_polynomial(std::vector<double> c) {
  c = detail::trim(std::move(c));
  if (c.size() == 1) return constant(c[0]);
  return poly(std::move(c));
}

inline ExpTypeFn scale(double c, const ExpTypeFn& f) {
  if (c == 0.0 || f.is_zero()) return constant(0.0);
  if (c == 1.0) return f;
  if (f.kind() == NodeKind::Const) return constant(c * f.value());
  if (f.kind() == NodeKind::Poly || f.kind() == NodeKind::Var) {
    auto p = *as_polynomial(f);
    for (auto& v : p) v *= c;
    return from_polynomial(std::move(p));
  }
  if (f.kind() == NodeKind::Scale) return scale(c * f.value(), f.children().front());
  return scaled(c, f);
}

inline ExpTypeFn add(const ExpTypeFn& f, const ExpTypeFn& g) {
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  auto pf = as_polynomial(f);
  auto pg = as_polynomial(g);
  if (pf && pg) {
    if (pg->size() > pf->size()) pf->resize(pg->size(), 0.0);
    for (std::size_t i = 0; i < pg->size(); ++i) (*pf)[i] += (*pg)[i];
    return from_polynomial(std::move(*pf));
  }
  std::vector<ExpTypeFn> terms;
  for (const auto* h : {&f, &g}) {
    if (h->kind() == NodeKind::Sum) {
      terms.insert(terms.end(), h->children().begin(), h->children().end());
    } else {
      terms.push_back(*h);
    }
  }
  return sum(std::move(terms));
}

inline ExpTypeFn subtract(const ExpTypeFn& f, const ExpTypeFn& g) { return add(f, scale(-1.0, g)); }

namespace detail {

// x * g, absorbing the 1/x of a centred sinoverx factor. nullopt when nothing absorbs.
inline std::optional<ExpTypeFn> times_x(const ExpTypeFn& g) {
  switch (g.kind()) {
    case NodeKind::SinOverX:
      if (g.order() == 0 && g.center() == 0.0) return sine(g.freq(), 0.0);
      return std::nullopt;
    case NodeKind::Scale: {
      auto r = times_x(g.children().front());
      if (!r) return std::nullopt;
      return scale(g.value(), *r);
    }
    case NodeKind::Sum: {
      bool any = false;
      std::vector<ExpTypeFn> parts;
      for (const auto& ch : g.children()) {
        if (auto r = times_x(ch)) {
          any = true;
          parts.push_back(*r);
        } else {
          parts.push_back(product({variable(), ch}));
        }
      }
      if (!any) return std::nullopt;
      ExpTypeFn acc = constant(0.0);
      for (const auto& p : parts) acc = add(acc, p);
      return acc;
    }
    case NodeKind::Product: {
      std::vector<ExpTypeFn> kids(g.children().begin(), g.children().end());
      for (auto& ch : kids) {
        if (auto r = times_x(ch)) {
          ch = *r;
          return product(std::move(kids));
        }
      }
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

}  // namespace detail

inline ExpTypeFn multiply(const ExpTypeFn& f, const ExpTypeFn& g) {
  if (f.is_zero() || g.is_zero()) return constant(0.0);
  auto pf = as_polynomial(f);
  auto pg = as_polynomial(g);
  if (pf && pg) {
    std::vector<double> r(pf->size() + pg->size() - 1, 0.0);
    for (std::size_t i = 0; i < pf->size(); ++i)
      for (std::size_t j = 0; j < pg->size(); ++j) r[i + j] += (*pf)[i] * (*pg)[j];
    return from_polynomial(std::move(r));
  }
  if (pf && pf->size() == 1) return scale((*pf)[0], g);
  if (pg && pg->size() == 1) return scale((*pg)[0], f);
  // p(x) * g with p(0) = 0: move one factor of x into g when it cancels a 1/x.
  for (int pass = 0; pass < 2; ++pass) {
    const auto& p = pass == 0 ? pf : pg;
    const auto& other = pass == 0 ? g : f;
    if (p && p->size() > 1 && (*p)[0] == 0.0) {
      if (auto absorbed = detail::times_x(other)) {
        std::vector<double> q(p->begin() + 1, p->end());
        return multiply(from_polynomial(std::move(q)), *absorbed);
      }
    }
  }
  if (f.kind() == NodeKind::Scale) return scale(f.value(), multiply(f.children().front(), g));
  if (g.kind() == NodeKind::Scale) return scale(g.value(), multiply(f, g.children().front()));
  std::vector<ExpTypeFn> factors;
  for (const auto* h : {&f, &g}) {
    if (h->kind() == NodeKind::Product) {
      factors.insert(factors.end(), h->children().begin(), h->children().end());
    } else {
      factors.push_back(*h);
    }
  }
  return product(std::move(factors));
}

// ---------------------------------------------------------------------------
// Calculus.

/// sin(n u)/sin(u) = sum_{j<n} cos((n-1-2j) u), u = b x.
inline ExpTypeFn expand_sin_ratio(const ExpTypeFn& f) {
  const int n = f.node().k;
  const double b = f.denom_freq();
  ExpTypeFn acc = constant(n % 2 ? 1.0 : 0.0);
  for (int j = 0; 2 * j < n - 1; ++j) {
    acc = add(acc, scale(2.0, cosine((n - 1 - 2 * j) * b, 0.0)));
  }
  return acc;
}

namespace detail {

inline ExpTypeFn derive(const ExpTypeFn& f) {
  switch (f.kind()) {
    case NodeKind::Const:
    case NodeKind::Var:
    case NodeKind::Poly: {
      auto p = *as_polynomial(f);
      std::vector<double> d;
      for (std::size_t i = 1; i < p.size(); ++i) d.push_back(static_cast<double>(i) * p[i]);
      return from_polynomial(std::move(d));
    }
    case NodeKind::Sin:
      return scale(f.freq(), cosine(f.freq(), f.phase()));
    case NodeKind::Cos:
      return scale(-f.freq(), sine(f.freq(), f.phase()));
    case NodeKind::SinRatio:
      return derive(expand_sin_ratio(f));
    case NodeKind::SinOverX:
      if (f.freq() == 0.0) return constant(0.0);
      return sin_over_x(f.freq(), f.order() + 1, f.center());
    case NodeKind::Sum: {
      ExpTypeFn acc = constant(0.0);
      for (const auto& ch : f.children()) acc = add(acc, derive(ch));
      return acc;
    }
    case NodeKind::Product: {
      ExpTypeFn acc = constant(0.0);
      const auto kids = f.children();
      for (std::size_t i = 0; i < kids.size(); ++i) {
        ExpTypeFn term = derive(kids[i]);
        if (term.is_zero()) continue;
        for (std::size_t j = 0; j < kids.size(); ++j) {
          if (j != i) term = multiply(term, kids[j]);
        }
        acc = add(acc, term);
      }
      return acc;
    }
    case NodeKind::Scale:
      return scale(f.value(), derive(f.children().front()));
  }
  return constant(0.0);
}

}  // namespace detail

/// Symbolic derivative. The result keeps the type bound of f.
inline ExpTypeFn derivative(const ExpTypeFn& f) {
  return with_type_bound(detail::derive(f), f.type_bound());
}

/// f(x) sin(delta (x - x_eps)) / (delta (x - x_eps)): type grows by delta,
/// value at x_eps unchanged, |F| <= |f| everywhere.
inline ExpTypeFn mollify(const ExpTypeFn& f, double delta, double x_eps) {
  if (!(delta > 0.0)) throw std::invalid_argument("mollify: delta must be positive");
  return product({f, scaled(1.0 / delta, sin_over_x(delta, 0, x_eps))});
}

/// Complex-valued f = re + i im represented by two real trees.
struct ComplexFn {
  ExpTypeFn re;
  ExpTypeFn im;

  double modulus(double x) const { return std::hypot(re(x), im(x)); }
  double arg(double x) const { return std::atan2(im(x), re(x)); }

  /// cos(eta) re + sin(eta) im. Real, bounded by |f|, equal to |f(x)| at x when eta = arg f(x).
  ExpTypeFn rotate(double eta) const {
    return add(scale(std::cos(eta), re), scale(std::sin(eta), im));
  }
};

inline ComplexFn real_decompose(const ExpTypeFn& re, const ExpTypeFn& im) { return {re, im}; }

// ---------------------------------------------------------------------------
// Printing in the parser's grammar.

namespace detail {

inline std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", std::abs(v));
  if (std::signbit(v) && v != 0.0) return std::string("(0-") + buf + ")";
  return buf;
}

}  // namespace detail

inline std::string print(const ExpTypeFn& f) {
  using detail::number;
  switch (f.kind()) {
    case NodeKind::Const:
      return number(f.value());
    case NodeKind::Var:
      return "x";
    case NodeKind::Poly: {
      std::string s = "(";
      const auto c = f.coeffs();
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += "+";
        s += number(c[i]);
        for (std::size_t j = 0; j < i; ++j) s += "*x";
      }
      return s + ")";
    }
    case NodeKind::Sin:
    case NodeKind::Cos:
      return std::string(f.kind() == NodeKind::Sin ? "sin(" : "cos(") + number(f.freq()) + "*x+" +
             number(f.phase()) + ")";
    case NodeKind::SinRatio:
      return "sinratio(" + number(f.freq()) + "," + number(f.denom_freq()) + ")";
    case NodeKind::SinOverX:
      if (f.order() == 0 && f.center() == 0.0) return "sinoverx(" + number(f.freq()) + ")";
      return "sinoverx(" + number(f.freq()) + "," + std::to_string(f.order()) + "," +
             number(f.center()) + ")";
    case NodeKind::Sum:
    case NodeKind::Product: {
      const char* op = f.kind() == NodeKind::Sum ? "+" : "*";
      std::string s = "(";
      bool first = true;
      for (const auto& ch : f.children()) {
        if (!first) s += op;
        first = false;
        s += print(ch);
      }
      return s + ")";
    }
    case NodeKind::Scale:
      return "(" + number(f.value()) + "*" + print(f.children().front()) + ")";
  }
  return "0";
}

}  // namespace rsineq
