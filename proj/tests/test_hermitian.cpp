#include "doctest.h"

#include "tclab/hermitian.hpp"

#include <random>

using namespace tclab;

namespace {

PolyQ P(std::initializer_list<Rational> coeffs) { return PolyQ(std::vector<Rational>(coeffs)); }

const RatFuncQ kPageH =
    RatFuncQ(P({Rational(7), Rational(0), Rational(-8), Rational(0), Rational(1)}),
             P({Rational(8), Rational(0), Rational(-2)}));

}  // namespace

TEST_CASE("mu invariant") {
  // Linear A: mu = 0 for the matching coupling.
  CHECK(mu_invariant(P({Rational(3), Rational(2)}), Rational(2)).is_zero());

  // Quadratic family A = e(x+c)^2 - b^2/(4e): mu = 0.
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<long long> small(1, 9);
  for (int trial = 0; trial < 50; ++trial) {
    Rational e(small(rng), small(rng)), c(small(rng), small(rng)), b(small(rng), small(rng));
    Rational t = e * c * c - b * b / (4 * e);
    PolyQ A({t, 2 * e * c, e});
    CHECK(mu_invariant(A, b).is_zero());
    // Linear draw too.
    Rational bb(small(rng), small(rng)), aa(small(rng), small(rng));
    CHECK(mu_invariant(PolyQ({aa, bb}), bb).is_zero());
  }

  // Direct formula test on an invalid profile shape: A = x^3.
  PolyQ x3({Rational(0), Rational(0), Rational(0), Rational(1)});
  Rational b(1);
  // mu = 2*6x/x^3 - (3x^2/x^3)^2 + 1/x^6 = 3/x^2 + 1/x^6 -> (3x^4+1)/x^6.
  auto mu = mu_invariant(x3, b);
  CHECK(mu == RatFuncQ(P({Rational(1), Rational(0), Rational(0), Rational(0), Rational(3)}),
                       PolyQ({Rational(0), Rational(0), Rational(0), Rational(0), Rational(0),
                              Rational(0), Rational(1)})));
}

TEST_CASE("general h integration matches the Kahler route for linear profiles") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long long> small(1, 6);
  for (int trial = 0; trial < 20; ++trial) {
    Rational b1(small(rng), small(rng)), a1(small(rng) + 3, 1);
    Rational b2(-small(rng), small(rng)), a2(small(rng) + 5, 1);
    FiberProfile prof{{2, PolyQ({a1, b1}), b1}, {4, PolyQ({a2, b2}), b2}};
    FiberData w{{2, b1, a1}, {4, b2, a2}};
    Rational S(small(rng), small(rng)), e(small(rng), 3), f(small(rng), 7);
    CHECK(general_h_integration(prof, S, e, f) == h_from_scalar(w, PolyQ({S}), e, f));
  }
}

TEST_CASE("general h integration requires the mu gate") {
  // A quadratic entry outside the solution2 family violates sum d_j mu_j = 0.
  FiberProfile bad{{2, P({Rational(1), Rational(1), Rational(1)}), Rational(0)}};
  CHECK_THROWS_AS(general_h_integration(bad, Rational(0), Rational(0), Rational(0)),
                  std::domain_error);
}

TEST_CASE("wang scalar closes the loop on general integration") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long long> small(1, 5);
  for (int trial = 0; trial < 50; ++trial) {
    // Mixed profile: one linear entry, one solution2 quadratic entry.
    Rational bl(small(rng), small(rng)), al(small(rng) + 2, 1);
    Rational e(small(rng), small(rng)), c(small(rng) + 1, 1), bq(small(rng), small(rng));
    Rational t = e * c * c - bq * bq / (4 * e);
    FiberProfile prof{{2, PolyQ({al, bl}), bl}, {2, PolyQ({t, 2 * e * c, e}), bq}};
    Rational S(small(rng) - 3, small(rng));
    auto h = general_h_integration(prof, S, Rational(small(rng), 4), Rational(small(rng), 5));
    CHECK(wang_scalar(prof, h) == RatFuncQ(S));
  }
}

TEST_CASE("caller-supplied orbit scalar route") {
  // With S* = sum d_j/A_j the two overloads coincide.
  FiberProfile prof{{2, P({Rational(1), Rational(1)}), Rational(1)}};
  RatFuncQ sstar = RatFuncQ(Rational(2)) / RatFuncQ(P({Rational(1), Rational(1)}));
  auto h1 = general_h_integration(prof, Rational(0), Rational(2), Rational(0));
  auto h2 = general_h_integration(prof, sstar, Rational(0), Rational(2), Rational(0));
  CHECK(h1 == h2);

  // Non-polynomial (S* - S) V^{1/2} is rejected.
  RatFuncQ badstar = RatFuncQ(Rational(1)) / RatFuncQ(P({Rational(2), Rational(1)}));
  CHECK_THROWS_AS(general_h_integration(prof, badstar, Rational(0), Rational(0), Rational(0)),
                  std::invalid_argument);
}

TEST_CASE("hirzebruch hermitian family") {
  // q = -1, l = 0: the Page data.
  auto page = hirzebruch_hermitian_family(-1, Rational(0));
  REQUIRE(page.valid);
  CHECK(page.S == 6);
  CHECK(page.h == kPageH);
  CHECK(page.A1 == PolyQ({Rational(1, 2), Rational(0), Rational(-1, 8)}));
  // A1 = (1/8)(2+x)(2-x) = (4-x^2)/8.
  CHECK(page.A1 == Rational(1, 8) * P({Rational(4), Rational(0), Rational(-1)}));

  // q = 0, l = 1/2: h = (1-x^2)(x^2/4+2x+9/4)/(2(x/2+1)^2).
  auto q0 = hirzebruch_hermitian_family(0, Rational(1, 2));
  REQUIRE(q0.valid);
  PolyQ num = P({Rational(1), Rational(0), Rational(-1)}) *
              P({Rational(9, 4), Rational(2), Rational(1, 4)});
  PolyQ den = Rational(2) * P({Rational(1), Rational(1, 2)}) * P({Rational(1), Rational(1, 2)});
  CHECK(q0.h == RatFuncQ(num, den));
  CHECK(q0.A1 == Rational(1, 2) * (P({Rational(1), Rational(1, 2)}) * P({Rational(1), Rational(1, 2)})));

  // q = -2 is rejected (b = 1 >= 1).
  CHECK(!hirzebruch_hermitian_family(-2, Rational(0)).valid);
  // Validity region is symmetric in l.
  for (Rational l : {Rational(1, 4), Rational(2, 5), Rational(99, 200)}) {
    CHECK(hirzebruch_hermitian_family(-1, l).valid == hirzebruch_hermitian_family(-1, -l).valid);
    CHECK(hirzebruch_hermitian_family(0, l).valid);
  }
  CHECK(!hirzebruch_hermitian_family(0, Rational(1)).valid);

  // Boundary data is exact for every valid member, and S == 6 through the
  // scalar formula.
  for (Rational l : {Rational(0), Rational(1, 4), Rational(-2, 5)}) {
    auto fam = hirzebruch_hermitian_family(-1, l);
    REQUIRE(fam.valid);
    CHECK(fam.h.num()(Rational(1)) == 0);
    CHECK(fam.h.num()(Rational(-1)) == 0);
    CHECK(fam.h.derivative()(Rational(-1)) == 2);
    CHECK(fam.h.derivative()(Rational(1)) == -2);
    FiberProfile prof{{2, fam.A1, fam.b}};
    CHECK(wang_scalar(prof, fam.h) == RatFuncQ(Rational(6)));
  }
}

TEST_CASE("compact hermitian solve") {
  CompactHermitianSpec spec;
  spec.linear = {{2, Rational(1)}};
  spec.d_quad = 2;
  spec.e_quad = Rational(1);
  spec.b_quad = Rational(1);

  auto sol = solve_compact_hermitian(spec, Rational(5));
  REQUIRE(sol.found);
  CHECK(sol.boundary_residual < 1e-12);
  CHECK(sol.positivity.positive());
  // h(0) = 0, h'(0) = 2, h(1) = 0 hold exactly.
  CHECK(sol.h.num()(Rational(0)) == 0);
  CHECK(sol.h.derivative()(Rational(0)) == 2);
  CHECK(sol.h.num()(Rational(1)) == 0);

  // Larger companions: beta approaches 4 (empirically beta - 4 ~ 2/c).
  auto big = solve_compact_hermitian(spec, Rational(100));
  REQUIRE(big.found);
  CHECK(std::abs(to_double(big.beta) - 4.0) < 3e-2);
  auto bigger = solve_compact_hermitian(spec, Rational(400));
  REQUIRE(bigger.found);
  CHECK(std::abs(to_double(bigger.beta) - 4.0) < 1e-2);
  CHECK(std::abs(to_double(bigger.beta) - 4.0) < std::abs(to_double(big.beta) - 4.0));

  // Scan interface.
  auto scanned = solve_compact_hermitian_scan(spec, Rational(5), Rational(500));
  CHECK(scanned.found);
}

TEST_CASE("noncompact hermitian") {
  // Single quadratic entry (2, x^2+x+1, 1): mu = 0 needs 4et = l^2 - b^2:
  // 4 != 0 -> that entry is NOT in the solution2 family; use a valid one.
  // 4 e t = l^2 - b^2 with e=1, l=2, t=3/4, b=1: A = x^2 + 2x + 3/4.
  FiberProfile prof{{2, P({Rational(3, 4), Rational(2), Rational(1)}), Rational(1)}};
  auto flat = noncompact_hermitian(prof, Rational(0));
  REQUIRE(flat.accepted);
  CHECK(flat.orbit == "line-bundle");

  auto rejected = noncompact_hermitian(prof, Rational(1));
  CHECK(!rejected.accepted);
  CHECK(rejected.reason.find("beta > 0") != std::string::npos);

  auto neg = noncompact_hermitian(prof, Rational(-1));
  CHECK(neg.accepted);

  // Spec's mixed example: lin (2, x+1, 1) and quad (2, 2(x+1)^2 - 1/8, 1):
  // 4 e t = l^2 - b^2: e=2, l=4, t=2-1/8=15/8: 4*2*15/8 = 15 = 16-1 ✓.
  FiberProfile mixed{{2, P({Rational(1), Rational(1)}), Rational(1)},
                     {2, P({Rational(15, 8), Rational(4), Rational(2)}), Rational(1)}};
  auto ok = noncompact_hermitian(mixed, Rational(0));
  REQUIRE(ok.accepted);

  // Collapsed first entry: A_1 = x^2 + x/2 with d_1 = 2 (b_1 = 1/2 = 2/(d+2)).
  FiberProfile collapsed{{2, P({Rational(0), Rational(1, 2), Rational(1)}), Rational(1, 2)},
                         {2, P({Rational(3, 4), Rational(2), Rational(1)}), Rational(1)}};
  auto cone = noncompact_hermitian(collapsed, Rational(0));
  REQUIRE(cone.accepted);
  CHECK(cone.orbit == "C^2-bundle");

  // Collapsed entry with the wrong slope is refused.
  FiberProfile badslope{{2, P({Rational(0), Rational(1), Rational(1)}), Rational(1)}};
  auto refused = noncompact_hermitian(badslope, Rational(0));
  CHECK(!refused.accepted);
}
