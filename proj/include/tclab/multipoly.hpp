#pragma once

#include "tclab/rational.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace tclab {

/// Sparse multivariate polynomial over Rational in variables x1..xn.
/// Exponent vectors are kept at a fixed arity `nvars`.
class MultiPoly {
 public:
  using Exponents = std::vector<unsigned>;

  explicit MultiPoly(size_t nvars = 0) : nvars_(nvars) {}

  static MultiPoly constant(size_t nvars, const Rational& c) {
    MultiPoly p(nvars);
    if (c != 0) p.terms_[Exponents(nvars, 0)] = c;
    return p;
  }
  static MultiPoly variable(size_t nvars, size_t index) {
    if (index >= nvars) throw std::out_of_range("variable index");
    MultiPoly p(nvars);
    Exponents e(nvars, 0);
    e[index] = 1;
    p.terms_[e] = 1;
    return p;
  }

  size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponents, Rational>& terms() const { return terms_; }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponents(nvars_, 0));
  }
  Rational constant_value() const {
    if (terms_.empty()) return Rational(0);
    auto it = terms_.find(Exponents(nvars_, 0));
    return it == terms_.end() ? Rational(0) : it->second;
  }

  unsigned degree_in(size_t var) const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
  }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    check_arity(a, b);
    MultiPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
  }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
    check_arity(a, b);
    MultiPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
    return r;
  }
  MultiPoly operator-() const {
    MultiPoly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
  }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    check_arity(a, b);
    MultiPoly r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e = ea;
        for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  friend MultiPoly operator*(const Rational& k, const MultiPoly& a) {
    MultiPoly r(a.nvars_);
    if (k == 0) return r;
    for (const auto& [e, c] : a.terms_) r.terms_[e] = k * c;
    return r;
  }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  MultiPoly derivative(size_t var) const {
    MultiPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Exponents d = e;
      d[var] -= 1;
      r.add_term(d, c * Rational(e[var]));
    }
    return r;
  }

  Rational eval(const std::vector<Rational>& x) const {
    if (x.size() != nvars_) throw std::invalid_argument("evaluation arity mismatch");
    Rational acc(0);
    for (const auto& [e, c] : terms_) {
      Rational term = c;
      for (size_t i = 0; i < nvars_; ++i)
        for (unsigned k = 0; k < e[i]; ++k) term *= x[i];
      acc += term;
    }
    return acc;
  }
  double eval(const std::vector<double>& x) const {
    double acc = 0;
    for (const auto& [e, c] : terms_) {
      double term = to_double(c);
      for (size_t i = 0; i < nvars_; ++i)
        for (unsigned k = 0; k < e[i]; ++k) term *= x[i];
      acc += term;
    }
    return acc;
  }

  /// Rational content (gcd of coefficients over Q, scaled to integers).
  Rational content() const;

  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  static void check_arity(const MultiPoly& a, const MultiPoly& b) {
    if (a.nvars_ != b.nvars_) throw std::invalid_argument("polynomial arity mismatch");
  }
  void add_term(const Exponents& e, const Rational& c) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (c != 0) terms_[e] = c;
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  size_t nvars_;
  std::map<Exponents, Rational> terms_;
};

/// Multivariate rational function num/den, reduced by content only (full
/// multivariate gcds are out of scope); the denominator's leading
/// coefficient (lex order) is normalized positive.  Use cross multiplication
/// for equality of values.
class MultiRatFunc {
 public:
  MultiRatFunc() : num_(0), den_(MultiPoly::constant(0, 1)) {}
  explicit MultiRatFunc(size_t nvars)
      : num_(nvars), den_(MultiPoly::constant(nvars, 1)) {}
  MultiRatFunc(MultiPoly num, MultiPoly den);

  static MultiRatFunc constant(size_t nvars, const Rational& c) {
    return MultiRatFunc(MultiPoly::constant(nvars, c), MultiPoly::constant(nvars, 1));
  }
  static MultiRatFunc variable(size_t nvars, size_t index) {
    return MultiRatFunc(MultiPoly::variable(nvars, index), MultiPoly::constant(nvars, 1));
  }

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  size_t nvars() const { return num_.nvars(); }
  bool is_zero() const { return num_.is_zero(); }

  friend MultiRatFunc operator+(const MultiRatFunc& a, const MultiRatFunc& b) {
    return MultiRatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend MultiRatFunc operator-(const MultiRatFunc& a, const MultiRatFunc& b) {
    return MultiRatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  MultiRatFunc operator-() const { return MultiRatFunc(-num_, den_); }
  friend MultiRatFunc operator*(const MultiRatFunc& a, const MultiRatFunc& b) {
    return MultiRatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend MultiRatFunc operator/(const MultiRatFunc& a, const MultiRatFunc& b) {
    if (b.is_zero()) throw std::domain_error("division by zero rational function");
    return MultiRatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }

  /// Equality as rational functions (cross-multiplied).
  bool same_value(const MultiRatFunc& o) const { return num_ * o.den_ == o.num_ * den_; }

  MultiRatFunc derivative(size_t var) const {
    return MultiRatFunc(num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_);
  }

  Rational eval(const std::vector<Rational>& x) const {
    Rational d = den_.eval(x);
    if (d == 0) throw std::domain_error("rational function pole at evaluation point");
    return num_.eval(x) / d;
  }
  double eval(const std::vector<double>& x) const { return num_.eval(x) / den_.eval(x); }

  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  MultiPoly num_, den_;
};

/// Parse an expression in variables x1..xn (x, y, z accepted as aliases for
/// x1, x2, x3) with +, -, *, /, ^, parentheses, and rational literals, e.g.
/// "(x1^2-10)/((x1^2-4)*(x1^2-7))".
MultiRatFunc parse_ratfunc(const std::string& text, size_t nvars);

}  // namespace tclab
