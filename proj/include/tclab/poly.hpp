#pragma once

#include "tclab/rational.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace tclab {

/// Dense univariate polynomial over a field K.  Coefficient index equals the
/// degree; the zero polynomial is the empty vector and the leading
/// coefficient is nonzero otherwise.
template <class K>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<K> coeffs) : c_(coeffs) { trim(); }

  static Poly constant(const K& k) { return Poly(std::vector<K>{k}); }
  static Poly x() { return Poly(std::vector<K>{K(0), K(1)}); }
  /// k * x^n
  static Poly monomial(const K& k, size_t n) {
    std::vector<K> c(n + 1, K(0));
    c[n] = k;
    return Poly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  /// Degree of the zero polynomial is -1 by convention.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<K>& coeffs() const { return c_; }
  const K& operator[](size_t i) const {
    static const K zero = K(0);
    return i < c_.size() ? c_[i] : zero;
  }
  const K& leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<K> c(std::max(a.c_.size(), b.c_.size()), K(0));
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] = c[i] + b.c_[i];
    return Poly(std::move(c));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<K> c(std::max(a.c_.size(), b.c_.size()), K(0));
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] = c[i] - b.c_[i];
    return Poly(std::move(c));
  }
  Poly operator-() const {
    std::vector<K> c(c_);
    for (auto& k : c) k = K(0) - k;
    return Poly(std::move(c));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<K> c(a.c_.size() + b.c_.size() - 1, K(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
    return Poly(std::move(c));
  }
  friend Poly operator*(const K& k, const Poly& a) {
    std::vector<K> c(a.c_);
    for (auto& v : c) v = k * v;
    return Poly(std::move(c));
  }
  friend Poly operator*(const Poly& a, const K& k) { return k * a; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  template <class V>
  V eval(const V& x) const {
    V acc = V(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + V(c_[i]);
    return acc;
  }
  K operator()(const K& x) const { return eval<K>(x); }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<K> c(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = K(static_cast<long long>(i)) * c_[i];
    return Poly(std::move(c));
  }

  /// Antiderivative with value `constant` at 0.
  Poly antiderivative(const K& constant = K(0)) const {
    std::vector<K> c(c_.size() + 1, K(0));
    c[0] = constant;
    for (size_t i = 0; i < c_.size(); ++i) c[i + 1] = c_[i] / K(static_cast<long long>(i + 1));
    return Poly(std::move(c));
  }

  /// Exact Euclidean division; returns {quotient, remainder}.
  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    Poly q, r = a;
    std::vector<K> qc(a.c_.size() > b.c_.size() ? a.c_.size() - b.c_.size() + 1 : 1, K(0));
    while (!r.is_zero() && r.degree() >= b.degree()) {
      K factor = r.leading() / b.leading();
      size_t shift = static_cast<size_t>(r.degree() - b.degree());
      qc[shift] = qc[shift] + factor;
      r = r - Poly::monomial(factor, shift) * b;
    }
    return {Poly(std::move(qc)), r};
  }

  /// Substitute x -> p(x).
  Poly compose(const Poly& p) const {
    Poly acc;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * p + Poly::constant(c_[i]);
    return acc;
  }

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == K(0)) c_.pop_back();
  }
  std::vector<K> c_;
};

template <class K>
Poly<K> gcd(Poly<K> a, Poly<K> b) {
  while (!b.is_zero()) {
    auto [q, r] = divmod(a, b);
    (void)q;
    a = b;
    b = r;
  }
  if (a.is_zero()) return a;
  K lead = a.leading();
  std::vector<K> c(a.coeffs());
  for (auto& k : c) k = k / lead;
  return Poly<K>(std::move(c));
}

/// Double antiderivative of p: result'' = p, result(0) = f, result'(0) = e.
template <class K>
Poly<K> poly_double_antiderivative(const Poly<K>& p, const K& e, const K& f) {
  return p.antiderivative(e).antiderivative(f);
}

using PolyQ = Poly<Rational>;

/// Integer-content normalization helper: clears denominators and common
/// integer factors, preserving sign of the leading coefficient.
inline PolyQ primitive_part(const PolyQ& p) {
  if (p.is_zero()) return p;
  BigInt den_lcm = 1;
  for (const auto& c : p.coeffs()) den_lcm = boost::multiprecision::lcm(den_lcm, rat_den(c));
  BigInt num_gcd = 0;
  for (const auto& c : p.coeffs()) num_gcd = boost::multiprecision::gcd(num_gcd, BigInt(rat_num(c) * (den_lcm / rat_den(c))));
  if (num_gcd == 0) return p;
  Rational scale(den_lcm, num_gcd);
  std::vector<Rational> out(p.coeffs());
  for (auto& c : out) c *= scale;
  return PolyQ(std::move(out));
}

template <class K>
std::string Poly<K>::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == K(0)) continue;
    std::string term;
    if constexpr (std::is_same_v<K, Rational>) {
      term = rat_to_string(c_[i]);
    } else {
      term = "(?)";
    }
    if (i > 0) {
      if (term == "1") term.clear();
      else if (term == "-1") term = "-";
      else term += "*";
      term += var;
      if (i > 1) term += "^" + std::to_string(i);
    }
    if (!out.empty() && term[0] != '-') out += "+";
    out += term;
  }
  return out.empty() ? "0" : out;
}

}  // namespace tclab
