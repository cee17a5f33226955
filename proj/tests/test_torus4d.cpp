#include "doctest.h"

#include "tclab/torus4d.hpp"

#include <cmath>
#include <random>

using namespace tclab;

TEST_CASE("orbit invariants of the catalog actions") {
  auto s4 = orbit_invariants({{{1, 0}, {0, 1}}});
  CHECK(s4.chi == 2);
  CHECK(s4.tau == 0);
  CHECK(s4.spin);
  CHECK(s4.hitchin_thorpe_pass);

  auto cp2 = orbit_invariants({{{0, 1}, {1, 0}, {1, 1}}});
  CHECK(cp2.chi == 3);
  CHECK(std::abs(cp2.tau) == 1);
  CHECK(!cp2.spin);
  CHECK(cp2.hitchin_thorpe_pass);

  auto page = orbit_invariants({{{0, 1}, {1, 1}, {0, 1}, {1, 0}}});
  CHECK(page.chi == 4);
  CHECK(page.tau == 0);
  CHECK(!page.spin);

  auto s2s2 = orbit_invariants({{{0, 1}, {1, 0}, {0, 1}, {1, 0}}});
  CHECK(s2s2.chi == 4);
  CHECK(s2s2.tau == 0);
  CHECK(s2s2.spin);

  CHECK_THROWS_AS(orbit_invariants({{{2, 0}, {0, 1}}}), std::invalid_argument);
  CHECK_THROWS_AS(orbit_invariants({{{1, 0}, {1, 2}}}), std::invalid_argument);
}

TEST_CASE("tau flips sign under orientation reversal") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<long long> coef(1, 3);
  for (int trial = 0; trial < 50; ++trial) {
    // Random corner insertions starting from the S^4 action keep the list
    // valid (inserting p_j + p_{j+1} preserves adjacent determinants).
    std::vector<std::pair<long long, long long>> p{{1, 0}, {0, 1}};
    int inserts = 1 + trial % 6;
    for (int i = 0; i < inserts; ++i) {
      size_t j = rng() % p.size();
      size_t jn = (j + 1) % p.size();
      std::pair<long long, long long> sum{p[j].first + p[jn].first, p[j].second + p[jn].second};
      p.insert(p.begin() + j + 1, sum);
    }
    auto inv = orbit_invariants({p});
    auto reversed = p;
    std::reverse(reversed.begin(), reversed.end());
    auto rinv = orbit_invariants({reversed});
    CHECK(inv.chi == rinv.chi);
    CHECK(inv.tau == -rinv.tau);
    // Blowup-type closed forms: chi = 2 + #inserts, and (k, l) recovered
    // from (chi, tau) must be nonnegative integers with k + l = #inserts.
    CHECK(inv.chi == 2 + inserts);
    long long twice_k = (inv.chi - 2) + inv.tau;
    CHECK(twice_k % 2 == 0);
    CHECK(twice_k >= 0);
    CHECK(twice_k <= 2 * inserts);
    (void)coef;
  }
}

TEST_CASE("hitchin-thorpe gate matches the blowup corollary bound") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<long long> kl(0, 40);
  for (int t = 0; t < 50; ++t) {
    long long k = kl(rng), l = kl(rng);
    long long chi = 2 + k + l, tau = k - l;
    bool ht = 2 * chi >= 3 * std::abs(tau);
    bool bound = (k <= 5 * l + 4) && (l <= 5 * k + 4);
    CHECK(ht == bound);
  }
}

TEST_CASE("einstein residuals of the catalog metrics (coarse grids)") {
  // Coarse-grid smoke checks; the acceptance suite runs the full 32x32 and
  // 64x64 versions.
  CHECK(torus_einstein_residual(metric_catalog("s4"), 8) < 2e-5);
  CHECK(torus_einstein_residual(metric_catalog("s2xs2"), 8) < 2e-5);
  CHECK(torus_einstein_residual(metric_catalog("cp2"), 8) < 2e-4);

  // Wrong Einstein constant: large residual.
  auto bad = metric_catalog("s4");
  bad.lambda = 2;
  CHECK(torus_einstein_residual(bad, 8) > 0.1);
}

TEST_CASE("residual decreases at 4th order or better under grid refinement") {
  double r8 = torus_einstein_residual(metric_catalog("s4"), 8);
  double r16 = torus_einstein_residual(metric_catalog("s4"), 16);
  CHECK(r8 / r16 >= 8.0);
}

TEST_CASE("page metric: derived lambda and residual") {
  auto page = metric_catalog("page");
  double nu = page_nu();
  CHECK(std::abs(4 * nu * (3 + nu * nu) / (3 + 6 * nu * nu - nu * nu * nu * nu) - 1) < 1e-12);
  CHECK(nu > 0.28);
  CHECK(nu < 0.29);

  double lam = derive_lambda(page, 1.1, 1.3);
  // The braced form of the metric has Einstein constant 3(1 + nu^2).
  CHECK(std::abs(lam - 3 * (1 + nu * nu)) < 1e-6);
  page.lambda = lam;
  CHECK(torus_einstein_residual(page, 12) < 1e-5);
}

TEST_CASE("catalog closures match the printed forms") {
  auto s4 = metric_catalog("s4");
  CHECK(s4.h11(1.1, 0.7) == doctest::Approx(std::pow(std::sin(1.1) * std::sin(0.7), 2)));
  CHECK(s4.h12(1.1, 0.7) == 0.0);

  auto cp2 = metric_catalog("cp2");
  double R = 0.9, T = 0.6;
  double expected_h12 = -std::pow(std::sin(R), 4) * std::pow(std::sin(T), 2) *
                        std::pow(std::cos(T), 2);
  CHECK(cp2.h12(R, T) == doctest::Approx(expected_h12).epsilon(1e-14));

  CHECK_THROWS_AS(metric_catalog("nope"), std::invalid_argument);
}

TEST_CASE("rho Q holomorphicity") {
  CHECK(rhoQ_holomorphicity(s4_isothermal(), 12) < 1e-6);

  // Flat product: identically zero.
  IsothermalMetric flat;
  flat.Omega = [](double, double) { return 1.0; };
  flat.rho = [](double, double) { return 1.0; };
  flat.K11 = [](double, double) { return 1.0; };
  flat.K12 = [](double, double) { return 0.0; };
  flat.K22 = [](double, double) { return 1.0; };
  CHECK(rhoQ_holomorphicity(flat, 8) == 0.0);

  // Perturbed S^4: visibly non-holomorphic.
  CHECK(rhoQ_holomorphicity(s4_isothermal(0.1), 12) > 1e-3);
}

TEST_CASE("surface gravity") {
  auto s4 = metric_catalog("s4");
  auto rep = surface_gravity(s4, 1, 0, RectSide::TMin);
  for (double k2 : rep.kappa2) CHECK(k2 == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(rep.max_deviation < 1e-6);

  auto s2 = metric_catalog("s2xs2");
  auto rep2 = surface_gravity(s2, 1, 0, RectSide::RMin);
  for (double k2 : rep2.kappa2) CHECK(k2 == doctest::Approx(1.0).epsilon(1e-6));

  // (0,1) does not vanish on theta = 0 of S^4.
  CHECK_THROWS_AS(surface_gravity(s4, 0, 1, RectSide::TMin), std::domain_error);
}

TEST_CASE("bolt area identity") {
  auto s2 = metric_catalog("s2xs2");
  auto rep = bolt_area_identity(s2);
  CHECK(rep.two_pi_area_A == doctest::Approx(16 * M_PI * M_PI).epsilon(1e-6));
  CHECK(rep.two_pi_area_B == doctest::Approx(16 * M_PI * M_PI).epsilon(1e-6));
  CHECK(rep.rel_error < 1e-6);

  auto s4 = metric_catalog("s4");
  auto rep4 = bolt_area_identity(s4);
  CHECK(rep4.rel_error < 1e-6);

  // One factor of radius 2: not Einstein with lambda = 1, identity fails.
  TorusMetric scaled = s2;
  scaled.h22 = [](double, double T) { return 4 * std::sin(T) * std::sin(T); };
  scaled.B = [](double, double) { return 4.0; };
  auto bad = bolt_area_identity(scaled);
  CHECK(bad.rel_error > 1e-2);

  // Nondiagonal input is rejected.
  CHECK_THROWS_AS(bolt_area_identity(metric_catalog("cp2")), std::invalid_argument);
}
