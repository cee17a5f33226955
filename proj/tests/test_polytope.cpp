#include "doctest.h"

#include "tclab/polytope.hpp"

#include <random>

using namespace tclab;

namespace {

RatVec pt(std::initializer_list<long long> xs) {
  RatVec v;
  for (long long x : xs) v.emplace_back(x);
  return v;
}

}  // namespace

TEST_CASE("vertex enumeration") {
  auto square = polytope_catalog("square");
  CHECK(square.vertices().size() == 4);
  CHECK(square.contains(pt({0, 0})));

  auto cp2 = polytope_catalog("cp2");
  REQUIRE(cp2.vertices().size() == 3);
  CHECK(cp2.vertices()[0] == pt({-1, -1}));
  CHECK(cp2.vertices()[1] == pt({-1, 2}));
  CHECK(cp2.vertices()[2] == pt({2, -1}));

  auto cp1 = polytope_catalog("cp1");
  REQUIRE(cp1.vertices().size() == 2);
  CHECK(cp1.vertices()[0] == RatVec{Rational(-1)});
  CHECK(cp1.vertices()[1] == RatVec{Rational(1)});
}

TEST_CASE("unbounded and empty systems are rejected") {
  CHECK_THROWS_AS(Polytope(2, {Facet{{1, 0}, Rational(-1)}, Facet{{0, 1}, Rational(-1)}}),
                  std::domain_error);
  CHECK_THROWS_AS(Polytope(1, {Facet{{1}, Rational(1)}, Facet{{-1}, Rational(1)}}),
                  std::domain_error);
}

TEST_CASE("delzant verdicts") {
  CHECK(is_delzant(polytope_catalog("square")).is_delzant);
  CHECK(is_delzant(polytope_catalog("hexagon")).is_delzant);
  CHECK(is_delzant(polytope_catalog("cp2")).is_delzant);
  CHECK(is_delzant(polytope_catalog("sakane6")).is_delzant);
  CHECK(is_delzant(polytope_catalog("blowup1", {{"a", Rational(1)}})).is_delzant);

  // Triangle with vertices (0,0), (1,0), (0,2): cone determinant 2 at (0,0)...
  // facets: x >= 0, y >= 0, -2x - y >= -2.
  Polytope bad(2, {Facet{{1, 0}, Rational(0)}, Facet{{0, 1}, Rational(0)},
                   Facet{{-2, -1}, Rational(-2)}});
  auto verdict = is_delzant(bad);
  CHECK(!verdict.is_delzant);
  REQUIRE(!verdict.failures.empty());
  bool found = false;
  for (const auto& f : verdict.failures)
    if (f.reason == "non-unimodular cone") found = true;
  CHECK(found);
}

TEST_CASE("moment integrals") {
  // Area of [0,1]^2 via facets x>=0, y>=0, -x>=-1, -y>=-1.
  Polytope unit(2, {Facet{{1, 0}, Rational(0)}, Facet{{0, 1}, Rational(0)},
                    Facet{{-1, 0}, Rational(-1)}, Facet{{0, -1}, Rational(-1)}});
  CHECK(unit.moment_integral({0, 0}) == Rational(1));
  CHECK(unit.moment_integral({1, 0}) == Rational(1, 2));
  CHECK(unit.moment_integral({1, 1}) == Rational(1, 4));

  auto hex = polytope_catalog("hexagon");
  CHECK(hex.moment_integral({0, 0}) == Rational(3));
  CHECK(hex.moment_integral({1, 0}) == Rational(0));

  auto cp2 = polytope_catalog("cp2");
  CHECK(cp2.moment_integral({0, 0}) == Rational(9, 2));
  CHECK(cp2.moment_integral({1, 0}) == Rational(0));

  // 3D: volume of the sakane6 polytope is positive, and the cube works.
  Polytope cube(3, {Facet{{1, 0, 0}, Rational(-1)}, Facet{{-1, 0, 0}, Rational(-1)},
                    Facet{{0, 1, 0}, Rational(-1)}, Facet{{0, -1, 0}, Rational(-1)},
                    Facet{{0, 0, 1}, Rational(-1)}, Facet{{0, 0, -1}, Rational(-1)}});
  CHECK(cube.moment_integral({0, 0, 0}) == Rational(8));
  CHECK(cube.moment_integral({2, 0, 0}) == Rational(8, 3));
  CHECK(polytope_catalog("sakane6").moment_integral({0, 0, 0}) > 0);
}

TEST_CASE("futaki vectors") {
  auto hex_futaki = polytope_catalog("hexagon").futaki_vector();
  CHECK(hex_futaki == RatVec{Rational(0), Rational(0)});

  CHECK(polytope_catalog("cp2").futaki_vector() == RatVec{Rational(0), Rational(0)});
  CHECK(polytope_catalog("cp1xcp1").futaki_vector() == RatVec{Rational(0), Rational(0)});

  for (long long anum : {1LL, 2LL}) {
    for (long long aden : {2LL, 1LL}) {
      Rational a(anum, aden);
      if (a >= 2) continue;
      auto fut = polytope_catalog("blowup1", {{"a", a}}).futaki_vector();
      bool nonzero = fut[0] != 0 || fut[1] != 0;
      CHECK(nonzero);
    }
  }

  // The sakane6 polytope has vanishing barycenter (it carries a KE metric).
  auto sak = polytope_catalog("sakane6").futaki_vector();
  CHECK(sak == RatVec{Rational(0), Rational(0), Rational(0)});
}

TEST_CASE("moment integral translation covariance") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long long> shift(-3, 3);
  for (int t = 0; t < 10; ++t) {
    RatVec v{Rational(shift(rng)), Rational(shift(rng))};
    auto base = polytope_catalog("hexagon");
    // Translate: <x, mu> >= lambda becomes <x, mu> >= lambda + <v, mu>.
    std::vector<Facet> shifted;
    for (auto f : base.facets()) {
      Rational extra(0);
      for (size_t i = 0; i < f.mu.size(); ++i) extra += Rational(f.mu[i]) * v[i];
      f.lambda += extra;
      shifted.push_back(f);
    }
    Polytope moved(2, shifted);
    Rational vol = base.moment_integral({0, 0});
    for (size_t i = 0; i < 2; ++i) {
      std::vector<unsigned> e(2, 0);
      e[i] = 1;
      CHECK(moved.moment_integral(e) == base.moment_integral(e) + v[i] * vol);
    }
  }
}

TEST_CASE("delzant verdict is SL(n,Z) invariant") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long long> small(-2, 2);
  auto apply = [&](const Polytope& P, long long a, long long b, long long c, long long d) {
    // x -> A^{-T} x maps facets mu -> A mu. det(A) = 1 keeps the lattice.
    std::vector<Facet> fs;
    for (auto f : P.facets()) {
      std::vector<long long> mu{a * f.mu[0] + b * f.mu[1], c * f.mu[0] + d * f.mu[1]};
      fs.push_back(Facet{mu, f.lambda});
    }
    return Polytope(2, fs);
  };
  int tried = 0;
  while (tried < 10) {
    long long a = small(rng), b = small(rng), c = small(rng), d = small(rng);
    if (a * d - b * c != 1) continue;
    ++tried;
    for (const char* name : {"hexagon", "cp2", "square"}) {
      auto P = polytope_catalog(name);
      CHECK(is_delzant(apply(P, a, b, c, d)).is_delzant == is_delzant(P).is_delzant);
    }
  }
}

TEST_CASE("catalog volume positivity and errors") {
  for (const char* name : {"cp1", "cp2", "cp1xcp1", "hexagon", "sakane6"}) {
    std::vector<unsigned> e(polytope_catalog(name).dim(), 0);
    CHECK(polytope_catalog(name).moment_integral(e) > 0);
  }
  CHECK(polytope_catalog("blowup1", {{"a", Rational(3, 2)}}).moment_integral({0, 0}) > 0);
  CHECK(polytope_catalog("sixdim", {{"a", Rational(2)}, {"c", Rational(3)}})
            .moment_integral({0, 0, 0}) > 0);
  CHECK(is_delzant(polytope_catalog("sixdim", {{"a", Rational(2)}, {"c", Rational(3)}})).is_delzant);
  CHECK_THROWS_AS(polytope_catalog("nope"), std::invalid_argument);
  CHECK_THROWS_AS(polytope_catalog("blowup1", {{"a", Rational(-1)}}), std::domain_error);
  CHECK_THROWS_AS(polytope_catalog("sixdim", {{"a", Rational(0)}, {"c", Rational(1)}}),
                  std::domain_error);
}
