#pragma once

#include "tclab/poly.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace tclab {

/// Univariate rational function num/den over a field K, kept in canonical
/// form: gcd(num, den) = 1 and den monic.  Structural equality is then exact
/// equality of rational functions.  With K = Rational this is the field Q(x);
/// nesting RatFunc<...> builds Q(a), Q(a)(c), ... for symbolic parameters.
template <class K>
class RatFunc {
 public:
  RatFunc() : num_(), den_(Poly<K>::constant(K(1))) {}
  RatFunc(long long n) : num_(Poly<K>::constant(K(n))), den_(Poly<K>::constant(K(1))) { reduce(); }
  explicit RatFunc(const K& k) : num_(Poly<K>::constant(k)), den_(Poly<K>::constant(K(1))) { reduce(); }
  RatFunc(Poly<K> num, Poly<K> den = Poly<K>::constant(K(1)))
      : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    reduce();
  }

  static RatFunc x() { return RatFunc(Poly<K>::x()); }

  const Poly<K>& num() const { return num_; }
  const Poly<K>& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  RatFunc operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw std::domain_error("division by zero rational function");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }
  friend RatFunc operator*(const K& k, const RatFunc& a) { return RatFunc(k * a.num_, a.den_); }
  friend RatFunc operator*(const RatFunc& a, const K& k) { return k * a; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  /// Evaluate at a point of K; throws if the (reduced) denominator vanishes.
  K operator()(const K& x) const {
    K d = den_(x);
    if (d == K(0)) throw std::domain_error("rational function pole at evaluation point");
    return num_(x) / d;
  }

  RatFunc derivative() const {
    return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }

  RatFunc derivative(int order) const {
    if (order < 1) throw std::invalid_argument("derivative order must be >= 1");
    RatFunc r = *this;
    for (int i = 0; i < order; ++i) r = r.derivative();
    return r;
  }

  /// Substitute x -> p/q (an affine or general rational substitution).
  RatFunc compose(const RatFunc& inner) const {
    RatFunc n, d(Poly<K>::constant(K(1)));
    // Horner in the inner function for numerator and denominator separately.
    for (size_t i = num_.coeffs().size(); i-- > 0;) n = n * inner + RatFunc(Poly<K>::constant(num_[i]));
    for (size_t i = den_.coeffs().size(); i-- > 0;) {
      if (i + 1 == den_.coeffs().size()) d = RatFunc(Poly<K>::constant(den_[i]));
      else d = d * inner + RatFunc(Poly<K>::constant(den_[i]));
    }
    return n / d;
  }

 private:
  void reduce() {
    if (num_.is_zero()) {
      den_ = Poly<K>::constant(K(1));
      return;
    }
    Poly<K> g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = divmod(num_, g).first;
      den_ = divmod(den_, g).first;
    }
    K lead = den_.leading();
    if (!(lead == K(1))) {
      std::vector<K> nc(num_.coeffs()), dc(den_.coeffs());
      for (auto& c : nc) c = c / lead;
      for (auto& c : dc) c = c / lead;
      num_ = Poly<K>(std::move(nc));
      den_ = Poly<K>(std::move(dc));
    }
  }

  Poly<K> num_, den_;
};

using RatFuncQ = RatFunc<Rational>;

inline std::string to_string(const RatFuncQ& r, const std::string& var = "x") {
  if (r.is_polynomial()) return r.num().to_string(var);
  return "(" + r.num().to_string(var) + ")/(" + r.den().to_string(var) + ")";
}

}  // namespace tclab
