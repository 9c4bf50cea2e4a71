// SPDX-License-Identifier: Apache-2.0
//
// Recursive-descent parser for the expression language:
//
//   expr   := term (("+" | "-") term)*
//   term   := unary (("*" | "/") unary)*
//   unary  := "-" unary | factor
//   factor := number | "pi" | "x" | name
//           | "sin(" expr ")" | "cos(" expr ")"          argument affine in x
//           | "sinratio(" expr "," expr ")"
//           | "sinoverx(" expr ["," expr "," expr] ")"   frequency [, order, center]
//           | "(" expr ")"
//
// Division is accepted only where the quotient is entire: by a nonzero
// constant, sin(a x)/sin(b x) with a/b a positive integer, and g/x when g
// vanishes at the origin through a sin(a x) or polynomial factor.

#pragma once

#include <cctype>
#include <charconv>
#include <map>
#include <string>
#include <string_view>

#include "rsineq/expr.hpp"

namespace rsineq {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : std::runtime_error("parse error at position " + std::to_string(position) + ": " + message),
        position_(position),
        message_(message) {}
  std::size_t position() const { return position_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t position_;
  std::string message_;
};

struct ParsedProgram {
  std::string source;
  ExpTypeFn root;
  std::map<std::string, double> free_parameters;
};

namespace detail {

inline bool is_const_sine(const ExpTypeFn& f) {
  return f.kind() == NodeKind::Sin && f.phase() == 0.0 && f.freq() != 0.0;
}

// num / sin(b x)
inline std::optional<ExpTypeFn> over_sine(const ExpTypeFn& num, double b) {
  switch (num.kind()) {
    case NodeKind::Sin:
      if (!is_const_sine(num)) return std::nullopt;
      return sin_ratio(num.freq(), b);
    case NodeKind::Scale: {
      auto r = over_sine(num.children().front(), b);
      if (!r) return std::nullopt;
      return scale(num.value(), *r);
    }
    case NodeKind::Product: {
      std::vector<ExpTypeFn> kids(num.children().begin(), num.children().end());
      for (auto& ch : kids) {
        if (is_const_sine(ch)) {
          ch = sin_ratio(ch.freq(), b);
          return product(std::move(kids));
        }
      }
      return std::nullopt;
    }
    case NodeKind::Sum: {
      ExpTypeFn acc = constant(0.0);
      for (const auto& ch : num.children()) {
        auto r = over_sine(ch, b);
        if (!r) return std::nullopt;
        acc = add(acc, *r);
      }
      return acc;
    }
    default:
      return std::nullopt;
  }
}

// num / x
inline std::optional<ExpTypeFn> over_x(const ExpTypeFn& num) {
  if (auto p = as_polynomial(num)) {
    if ((*p)[0] != 0.0 || p->size() < 2) return std::nullopt;
    return from_polynomial(std::vector<double>(p->begin() + 1, p->end()));
  }
  switch (num.kind()) {
    case NodeKind::Sin:
      if (!is_const_sine(num)) return std::nullopt;
      return sin_over_x(num.freq());
    case NodeKind::Scale: {
      auto r = over_x(num.children().front());
      if (!r) return std::nullopt;
      return scale(num.value(), *r);
    }
    case NodeKind::Product: {
      std::vector<ExpTypeFn> kids(num.children().begin(), num.children().end());
      for (auto& ch : kids) {
        if (auto r = over_x(ch)) {
          ch = *r;
          return product(std::move(kids));
        }
      }
      return std::nullopt;
    }
    case NodeKind::Sum: {
      ExpTypeFn acc = constant(0.0);
      for (const auto& ch : num.children()) {
        auto r = over_x(ch);
        if (!r) return std::nullopt;
        acc = add(acc, *r);
      }
      return acc;
    }
    default:
      return std::nullopt;
  }
}

class Parser {
 public:
  Parser(std::string_view src, const std::map<std::string, double>& params)
      : src_(src), params_(params) {}

  ExpTypeFn parse_all() {
    ExpTypeFn e = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected trailing input");
    return e;
  }

  std::map<std::string, double> used;

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }
  [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const {
    throw ParseError(at, msg);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  ExpTypeFn expr() {
    ExpTypeFn acc = term();
    for (;;) {
      if (accept('+')) {
        acc = add(acc, term());
      } else if (accept('-')) {
        acc = subtract(acc, term());
      } else {
        return acc;
      }
    }
  }

  ExpTypeFn term() {
    ExpTypeFn acc = unary();
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      if (accept('*')) {
        acc = multiply(acc, unary());
      } else if (accept('/')) {
        acc = divide(acc, unary(), at);
      } else {
        return acc;
      }
    }
  }

  ExpTypeFn unary() {
    if (accept('-')) return scale(-1.0, unary());
    return factor();
  }

  ExpTypeFn divide(const ExpTypeFn& num, const ExpTypeFn& den, std::size_t at) {
    try {
      if (auto p = as_polynomial(den)) {
        if (p->size() == 1) {
          if ((*p)[0] == 0.0) fail_at(at, "division by zero");
          return scale(1.0 / (*p)[0], num);
        }
        if (p->size() == 2 && (*p)[0] == 0.0) {
          if (auto r = over_x(num)) return scale(1.0 / (*p)[1], *r);
          fail_at(at, "quotient by x is not entire: numerator does not vanish at 0");
        }
      } else if (is_const_sine(den)) {
        if (auto r = over_sine(num, den.freq())) return *r;
        fail_at(at, "quotient by sin(b*x) needs a sin(a*x) numerator factor");
      }
    } catch (const NonEntireError& e) {
      fail_at(at, std::string("non-entire quotient: ") + e.what());
    }
    fail_at(at, "unsupported division");
  }

  double number() {
    skip_ws();
    const char* first = src_.data() + pos_;
    const char* last = src_.data() + src_.size();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr == first) fail("malformed number");
    pos_ += static_cast<std::size_t>(ptr - first);
    return v;
  }

  std::string identifier() {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    return std::string(src_.substr(start, pos_ - start));
  }

  double constant_arg(const char* what) {
    skip_ws();
    const std::size_t at = pos_;
    ExpTypeFn e = expr();
    auto p = as_polynomial(e);
    if (!p || p->size() != 1) fail_at(at, std::string(what) + " must be a constant");
    return (*p)[0];
  }

  ExpTypeFn factor() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return constant(number());
    if (accept('(')) {
      ExpTypeFn e = expr();
      expect(')');
      return e;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail(std::string("unexpected '") + c + "'");
    const std::size_t at = pos_;
    const std::string id = identifier();
    if (id == "x") return poly({0.0, 1.0});
    if (id == "pi") return constant(kPi);
    if (id == "sin" || id == "cos") {
      expect('(');
      skip_ws();
      const std::size_t arg_at = pos_;
      ExpTypeFn arg = expr();
      expect(')');
      auto p = as_polynomial(arg);
      if (!p || p->size() > 2) fail_at(arg_at, id + " argument must be affine a*x+b");
      const double b = (*p)[0];
      const double a = p->size() == 2 ? (*p)[1] : 0.0;
      if (a == 0.0) return constant(id == "sin" ? std::sin(b) : std::cos(b));
      return id == "sin" ? sine(a, b) : cosine(a, b);
    }
    if (id == "sinratio") {
      expect('(');
      const double a = constant_arg("sinratio numerator frequency");
      expect(',');
      const double b = constant_arg("sinratio denominator frequency");
      expect(')');
      try {
        return sin_ratio(a, b);
      } catch (const NonEntireError& e) {
        fail_at(at, std::string("non-entire quotient: ") + e.what());
      }
    }
    if (id == "sinoverx") {
      expect('(');
      const double a = constant_arg("sinoverx frequency");
      int order = 0;
      double center = 0.0;
      if (accept(',')) {
        const double k = constant_arg("sinoverx order");
        if (k < 0 || k != std::floor(k) || k > 64) fail_at(at, "sinoverx order must be 0..64");
        order = static_cast<int>(k);
        expect(',');
        center = constant_arg("sinoverx center");
      }
      expect(')');
      return sin_over_x(a, order, center);
    }
    if (auto it = params_.find(id); it != params_.end()) {
      used[id] = it->second;
      return constant(it->second);
    }
    fail_at(at, "unknown identifier '" + id + "'");
  }

  std::string_view src_;
  const std::map<std::string, double>& params_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses `source`; identifiers other than x and pi are looked up in `params`.
inline ParsedProgram parse(std::string_view source, const std::map<std::string, double>& params = {}) {
  detail::Parser p(source, params);
  ExpTypeFn root = p.parse_all();
  return ParsedProgram{std::string(source), root, p.used};
}

/// Shorthand for parse(source).root.
inline ExpTypeFn parse_expr(std::string_view source) { return parse(source).root; }

}  // namespace rsineq
