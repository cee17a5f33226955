#include "doctest.h"

#include "tclab/poly.hpp"
#include "tclab/ratfunc.hpp"
#include "tclab/sturm.hpp"

#include <random>

using namespace tclab;

namespace {

PolyQ P(std::initializer_list<long long> coeffs) {
  std::vector<Rational> c;
  for (long long v : coeffs) c.emplace_back(v);
  return PolyQ(std::move(c));
}

PolyQ random_poly(std::mt19937_64& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<long long> num(-9, 9);
  std::uniform_int_distribution<long long> den(1, 5);
  int d = deg(rng);
  std::vector<Rational> c(d + 1);
  for (auto& q : c) q = Rational(num(rng), den(rng));
  if (c.back() == 0) c.back() = 1;
  return PolyQ(std::move(c));
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
  CHECK(rat_parse("3/4").value() == Rational(3, 4));
  CHECK(rat_parse("-7").value() == Rational(-7));
  CHECK(rat_parse("0.25").value() == Rational(1, 4));
  CHECK(rat_to_string(Rational(-42, 11)) == "-42/11");
  CHECK(rat_to_string(Rational(5)) == "5");
  CHECK(!rat_parse("1/0").has_value());
  CHECK(!rat_parse("abc").has_value());
}

TEST_CASE("polynomial arithmetic basics") {
  PolyQ p = P({1, 0, 1});   // 1 + x^2
  PolyQ q = P({-1, 1});     // x - 1
  CHECK((p * q).degree() == 3);
  CHECK((p * q)(Rational(2)) == Rational(5));
  auto [quot, rem] = divmod(p * q + P({3}), p);
  CHECK(quot == q);
  CHECK(rem == P({3}));
  CHECK(gcd(p * q, q * q) == P({-1, 1}));
}

TEST_CASE("poly_double_antiderivative examples") {
  // p = 6x, e=f=0 -> x^3
  CHECK(poly_double_antiderivative(P({0, 6}), Rational(0), Rational(0)) == P({0, 0, 0, 1}));
  // p = 2-4x, e=f=0 -> x^2 - (2/3)x^3
  CHECK(poly_double_antiderivative(P({2, -4}), Rational(0), Rational(0)) ==
        PolyQ({Rational(0), Rational(0), Rational(1), Rational(-2, 3)}));
  // p = 0, e=2, f=0 -> 2x
  CHECK(poly_double_antiderivative(PolyQ(), Rational(2), Rational(0)) == P({0, 2}));
}

TEST_CASE("double antiderivative inverts differentiation exactly") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 50; ++t) {
    PolyQ p = random_poly(rng, 7);
    Rational e(t, 3), f(-t, 7);
    PolyQ h = poly_double_antiderivative(p, e, f);
    CHECK(h.derivative().derivative() == p);
    CHECK(h(Rational(0)) == f);
    CHECK(h.derivative()(Rational(0)) == e);
  }
}

TEST_CASE("ratfunc derivative examples") {
  RatFuncQ one_minus_x2(P({1, 0, -1}));
  CHECK(one_minus_x2.derivative() == RatFuncQ(P({0, -2})));

  RatFuncQ inv(P({1}), P({1, -1}));  // 1/(1-x)
  CHECK(inv.derivative(2) == RatFuncQ(P({2}), P({1, -3, 3, -1})));  // 2/(1-x)^3

  // d/dx of (x^2-10)/((x^2-4)(x^2-7)) vanishes at 0 (even function).
  RatFuncQ f(P({-10, 0, 1}), P({-4, 0, 1}) * P({-7, 0, 1}));
  CHECK(f.derivative()(Rational(0)) == Rational(0));
}

TEST_CASE("ratfunc derivative is linear and Leibniz") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 25; ++t) {
    RatFuncQ f(random_poly(rng, 4), random_poly(rng, 3));
    RatFuncQ g(random_poly(rng, 4), random_poly(rng, 3));
    CHECK((f + g).derivative() == f.derivative() + g.derivative());
    CHECK((f * g).derivative() == f.derivative() * g + f * g.derivative());
  }
}

TEST_CASE("ratfunc canonical form") {
  // (2x^2-2)/(2x-2) reduces to x+1.
  RatFuncQ r(P({-2, 0, 2}), P({-2, 2}));
  CHECK(r.is_polynomial());
  CHECK(r.num() == P({1, 1}));
  // Denominator is monic.
  RatFuncQ s(P({1}), P({0, 3}));
  CHECK(s.den() == P({0, 1}));
  CHECK(s.num() == PolyQ({Rational(1, 3)}));
}

TEST_CASE("sturm certificate on spec examples") {
  // x^2 + 1 on [-1, 1]: positive.
  auto c1 = sturm_sign_certificate(P({1, 0, 1}), Rational(-1), Rational(1), false, false);
  CHECK(c1.verdict == SignVerdict::Positive);

  // (1-x)(1+x) on open (-1, 1): positive with endpoint roots.
  auto c2 = sturm_sign_certificate(P({1, 0, -1}), Rational(-1), Rational(1), true, true);
  CHECK(c2.verdict == SignVerdict::Positive);
  CHECK(c2.endpoint_roots.size() == 2);

  // x^2 - 11x + 21 on [-1, 1]: positive (roots (11 +- sqrt(37))/2 lie outside).
  auto c3 = sturm_sign_certificate(P({21, -11, 1}), Rational(-1), Rational(1), false, false);
  CHECK(c3.verdict == SignVerdict::Positive);

  // Same quadratic on [0, 10] straddles both roots: fails with a witness.
  auto c4 = sturm_sign_certificate(P({21, -11, 1}), Rational(0), Rational(10), false, false);
  CHECK(c4.verdict == SignVerdict::Fails);
  REQUIRE(c4.witness.has_value());
  CHECK(c4.witness->hi - c4.witness->lo < Rational(1, 1000000));

  // -x^2 on (-1, 1): negative away from the double root.
  auto c5 = sturm_sign_certificate(P({0, 0, -1}), Rational(-1), Rational(1), true, true);
  CHECK(c5.verdict == SignVerdict::Fails);

  // x^2 (double root inside): nonnegative with roots.
  auto c6 = sturm_sign_certificate(P({0, 0, 1}), Rational(-1), Rational(1), true, true);
  CHECK(c6.verdict == SignVerdict::NonnegativeWithRoots);
  CHECK(c6.interior_roots.size() == 1);
  CHECK(c6.interior_roots[0].multiplicity == 2);

  CHECK_THROWS_AS(sturm_sign_certificate(PolyQ(), Rational(0), Rational(1), false, false),
                  std::domain_error);
}

TEST_CASE("sturm certificate agrees with dense sampling") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 100; ++t) {
    PolyQ p = random_poly(rng, 8);
    if (p.is_zero()) continue;
    Rational a(-2), b(2);
    auto cert = sturm_sign_certificate(p, a, b, false, false);
    bool sampled_negative = false;
    for (int i = 0; i <= 1000; ++i) {
      Rational x = a + (b - a) * Rational(i, 1000);
      if (p(x) < 0) sampled_negative = true;
    }
    if (sampled_negative) CHECK(cert.verdict == SignVerdict::Fails);
    if (cert.verdict != SignVerdict::Fails) CHECK(!sampled_negative);
  }
}

TEST_CASE("root isolation pins rational roots and multiplicities") {
  // (x-1)^2 (x+2) on [-3, 3]
  PolyQ p = P({-2, 1}).compose(PolyQ()) /* placeholder no-op */;
  p = P({1, -1}) * P({1, -1}) * P({2, 1});
  auto roots = isolate_roots(p, Rational(-3), Rational(3));
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].multiplicity == 1);
  CHECK(roots[0].lo <= Rational(-2));
  CHECK(roots[0].hi >= Rational(-2));
  CHECK(roots[1].multiplicity == 2);
}

TEST_CASE("nested rational function field Q(a)") {
  using Ka = RatFunc<Rational>;   // Q(a)
  using PolyA = Poly<Ka>;
  // (a x + 1)(x - a) expands and factors back through gcd.
  PolyA p({Ka(Rational(1)), Ka::x()});                       // a x + 1 -- coefficients 1, a
  PolyA q({Ka(Poly<Rational>({Rational(0), Rational(-1)})), Ka(Rational(1))});  // x - a
  PolyA prod = p * q;
  CHECK(gcd(prod, p).degree() == 1);
  CHECK(divmod(prod, q).first == divmod(prod, q).first);
}
