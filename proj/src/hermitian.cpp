#include "tclab/hermitian.hpp"

#include <sstream>
#include <stdexcept>

namespace tclab {

RatFuncQ mu_invariant(const PolyQ& A, const Rational& b) {
  if (A.is_zero()) throw std::invalid_argument("mu invariant of the zero polynomial");
  PolyQ Ap = A.derivative(), App = Ap.derivative();
  // (2 A'' A - A'^2 + b^2) / A^2
  PolyQ num = Rational(2) * App * A - Ap * Ap + PolyQ({b * b});
  return RatFuncQ(num, A * A);
}

RatFuncQ sum_d_mu(const FiberProfile& profile) {
  RatFuncQ acc;
  for (const auto& entry : profile)
    acc = acc + Rational(entry.d) * mu_invariant(entry.A, entry.b);
  return acc;
}

static void validate_profile(const FiberProfile& profile) {
  if (profile.empty()) throw std::invalid_argument("profile must have at least one entry");
  for (const auto& entry : profile) {
    if (entry.d < 2 || entry.d % 2 != 0)
      throw std::invalid_argument("fiber dimensions must be even and >= 2");
    if (entry.A.is_zero() || entry.A.degree() > 2)
      throw std::invalid_argument("profile entries must have deg A <= 2");
  }
}

PolyQ profile_half_volume(const FiberProfile& profile) {
  PolyQ q({Rational(1)});
  for (const auto& entry : profile)
    for (int i = 0; i < entry.d / 2; ++i) q = q * entry.A;
  return q;
}

RatFuncQ wang_scalar(const FiberProfile& profile, const RatFuncQ& h) {
  validate_profile(profile);
  RatFuncQ sum_logd, sum_logd2, sum_App, sum_b2, sum_inv;
  for (const auto& entry : profile) {
    RatFuncQ A(entry.A), Ap(entry.A.derivative()), App(entry.A.derivative().derivative());
    RatFuncQ d(Rational(entry.d));
    sum_logd = sum_logd + d * Ap / A;
    sum_logd2 = sum_logd2 + d * Ap * Ap / (A * A);
    sum_App = sum_App + d * App / A;
    sum_b2 = sum_b2 + d * RatFuncQ(entry.b * entry.b) / (A * A);
    sum_inv = sum_inv + d / A;
  }
  RatFuncQ hp = h.derivative(), hpp = hp.derivative();
  RatFuncQ quarter(Rational(1, 4));
  return -hpp - hp * sum_logd +
         h * (-sum_App + RatFuncQ(Rational(3, 4)) * sum_logd2 - quarter * sum_logd * sum_logd -
              quarter * sum_b2) +
         sum_inv;
}

RatFuncQ general_h_integration(const FiberProfile& profile, const Rational& S, const Rational& e,
                               const Rational& f) {
  validate_profile(profile);
  auto gate = sum_d_mu(profile);
  if (!gate.is_zero())
    throw std::domain_error("sum d_j mu_j != 0: " + to_string(gate));
  PolyQ V = profile_half_volume(profile);
  PolyQ inner;
  for (const auto& entry : profile) {
    auto [quot, rem] = divmod(V, entry.A);
    if (!rem.is_zero()) throw std::logic_error("A_j must divide V^{1/2}");
    inner = inner + Rational(entry.d) * quot;
  }
  inner = inner - PolyQ({S}) * V;
  return RatFuncQ(poly_double_antiderivative(inner, e, f), V);
}

RatFuncQ general_h_integration(const FiberProfile& profile, const RatFuncQ& S_star,
                               const Rational& S, const Rational& e, const Rational& f) {
  validate_profile(profile);
  auto gate = sum_d_mu(profile);
  if (!gate.is_zero())
    throw std::domain_error("sum d_j mu_j != 0: " + to_string(gate));
  PolyQ V = profile_half_volume(profile);
  RatFuncQ integrand = (S_star - RatFuncQ(S)) * RatFuncQ(V);
  if (!integrand.is_polynomial())
    throw std::invalid_argument("(S* - S) V^{1/2} must be a polynomial");
  return RatFuncQ(poly_double_antiderivative(integrand.num(), e, f), V);
}

HermitianFamilyResult hirzebruch_hermitian_family(long long q, const Rational& l) {
  HermitianFamilyResult result;
  result.b = Rational(q < 0 ? -q : q, 2);
  const Rational& b = result.b;
  // mu = 0 with A_1 = e x^2 + l x + k forces 4 e k = l^2 - b^2; the boundary
  // conditions force k = 1/2 and S = 6 (verified below by construction).
  Rational e = (l * l - b * b) / 2;
  result.A1 = PolyQ({Rational(1, 2), l, e});
  result.S = Rational(6);

  // Validity: A_1 > 0 on [-1, 1], i.e. ((l+b)x+1)((l-b)x+1) > 0, i.e.
  // 1 - l > b and 1 + l > b.
  if (!(1 - l > b)) {
    result.violated = "1 - l > b";
    return result;
  }
  if (!(1 + l > b)) {
    result.violated = "1 + l > b";
    return result;
  }

  FiberProfile profile{{2, result.A1, b}};
  // Left-end conditions h(-1) = 0, h'(-1) = 2 fix the integration constants:
  // P(-1) = 0 and P'(-1) = 2 V(-1) with h = P/V.
  PolyQ V = profile_half_volume(profile);
  PolyQ inner = Rational(2) * divmod(V, result.A1).first - PolyQ({result.S}) * V;
  PolyQ P0 = poly_double_antiderivative(inner, Rational(0), Rational(0));
  Rational e_const = 2 * V(Rational(-1)) - P0.derivative()(Rational(-1));
  Rational f_const = -(P0(Rational(-1)) + e_const * Rational(-1));
  PolyQ P = P0 + PolyQ({f_const, e_const});
  result.h = RatFuncQ(P, V);

  // The right-end conditions hold identically; keep them as hard checks.
  if (result.h.num()(Rational(1)) != 0 || result.h.derivative()(Rational(1)) != Rational(-2))
    throw std::logic_error("hermitian family boundary conditions failed");
  result.valid = true;
  return result;
}

namespace {

FiberProfile build_compact_profile(const CompactHermitianSpec& spec, const Rational& c,
                                   const Rational& c_m) {
  FiberProfile profile;
  for (const auto& [d, b] : spec.linear) {
    if (b <= 0) throw std::invalid_argument("linear entries need b > 0");
    profile.push_back({d, PolyQ({b * c, b}), b});
  }
  const Rational& e = spec.e_quad;
  if (e <= 0) throw std::invalid_argument("quadratic entry needs e > 0");
  Rational t = e * c_m * c_m - spec.b_quad * spec.b_quad / (4 * e);
  Rational lm = 2 * e * c_m;
  profile.push_back({spec.d_quad, PolyQ({t, lm, e}), spec.b_quad});
  return profile;
}

// Exact boundary data at fixed (c, c_m): beta from h(1) = 0, and the
// remaining function B = h'(1) + 2.
struct BoundaryEval {
  Rational beta;
  Rational B;
  PolyQ P, V;
};

BoundaryEval boundary_eval(const CompactHermitianSpec& spec, const Rational& c,
                           const Rational& c_m) {
  FiberProfile profile = build_compact_profile(spec, c, c_m);
  PolyQ V = profile_half_volume(profile);
  PolyQ G0;
  for (const auto& entry : profile)
    G0 = G0 + Rational(entry.d) * divmod(V, entry.A).first;
  PolyQ P0 = poly_double_antiderivative(G0, Rational(0), Rational(0));
  PolyQ P1 = poly_double_antiderivative(V, Rational(0), Rational(0));
  // h(0) = 0, h'(0) = 2: f = 0, e = 2 V(0).
  Rational e_const = 2 * V(Rational(0));
  // h(1) = 0 determines beta: P0(1) - beta P1(1) + e = 0.
  Rational p11 = P1(Rational(1));
  if (p11 == 0) throw std::domain_error("degenerate boundary system");
  Rational beta = (P0(Rational(1)) + e_const) / p11;
  PolyQ P = P0 - beta * P1 + PolyQ({Rational(0), e_const});
  BoundaryEval ev;
  ev.beta = beta;
  ev.B = P.derivative()(Rational(1)) / V(Rational(1)) + 2;
  ev.P = P;
  ev.V = V;
  return ev;
}

}  // namespace

CompactHermitianResult solve_compact_hermitian(const CompactHermitianSpec& spec, const Rational& c) {
  CompactHermitianResult result;
  result.c = c;
  if (spec.linear.empty()) throw std::invalid_argument("need at least one linear entry");
  {
    // The profile shape has sum d_j mu_j = 0 automatically (linear entries
    // have mu = 0; the quadratic entry is in the solution2 family).
    auto probe = build_compact_profile(spec, c, Rational(-2) * c);
    auto gate = sum_d_mu(probe);
    if (!gate.is_zero()) throw std::domain_error("sum d_j mu_j != 0 for this profile shape");
  }

  // Coarse scan for a sign change of B(c_m) over negative c_m, then bisect.
  Rational p(0), qq(spec.d_quad, 2);
  for (const auto& [d, b] : spec.linear) p += Rational(d, 2);
  // Expected location c_m ~ -(2 q / p) c from the intermediate-value argument.
  Rational center = -(2 * qq / p) * c;
  std::vector<Rational> grid;
  for (int i = -60; i <= 60; ++i) grid.push_back(center + center * Rational(i, 80));
  Rational lo(0), hi(0), flo(0);
  bool have_bracket = false;
  Rational prev_x(0), prev_f(0);
  bool have_prev = false;
  for (const auto& cm : grid) {
    if (cm >= 0) continue;
    Rational t = spec.e_quad * cm * cm - spec.b_quad * spec.b_quad / (4 * spec.e_quad);
    if (t <= 0) continue;
    Rational f;
    try {
      f = boundary_eval(spec, c, cm).B;
    } catch (const std::domain_error&) {
      have_prev = false;
      continue;
    }
    if (have_prev && ((f > 0) != (prev_f > 0))) {
      lo = prev_x;
      hi = cm;
      flo = prev_f;
      have_bracket = true;
      break;
    }
    prev_x = cm;
    prev_f = f;
    have_prev = true;
  }
  if (!have_bracket) {
    result.message = "not found in range (no sign change of h'(1) + 2)";
    return result;
  }
  for (int it = 0; it < 256; ++it) {
    Rational mid = (lo + hi) / 2;
    Rational f = boundary_eval(spec, c, mid).B;
    if (std::abs(to_double(f)) < 1e-12) {
      lo = hi = mid;
      break;
    }
    if ((f > 0) == (flo > 0)) {
      lo = mid;
      flo = f;
    } else {
      hi = mid;
    }
    if (std::abs(to_double(hi - lo)) < 1e-30) break;
  }
  Rational cm = (lo + hi) / 2;
  auto ev = boundary_eval(spec, c, cm);
  result.found = true;
  result.c_m = cm;
  result.beta = ev.beta;
  result.boundary_residual = std::abs(to_double(ev.B));
  result.h = RatFuncQ(ev.P, ev.V);
  result.positivity = sturm_sign_certificate(ev.P, Rational(0), Rational(1), true, true);
  if (result.boundary_residual > 1e-12) {
    result.found = false;
    result.message = "bisection stalled above tolerance";
  }
  return result;
}

CompactHermitianResult solve_compact_hermitian_scan(const CompactHermitianSpec& spec,
                                                    const Rational& c_lo, const Rational& c_hi) {
  Rational c = c_lo;
  CompactHermitianResult last;
  while (c <= c_hi) {
    last = solve_compact_hermitian(spec, c);
    if (last.found && last.positivity.positive()) return last;
    c = c * 2;
  }
  if (!last.found && last.message.empty()) last.message = "not found in range";
  return last;
}

NoncompactSolution noncompact_hermitian(const FiberProfile& profile, const Rational& beta) {
  validate_profile(profile);
  NoncompactSolution sol;
  auto gate = sum_d_mu(profile);
  if (!gate.is_zero()) throw std::domain_error("sum d_j mu_j != 0: " + to_string(gate));

  bool collapsed = false;
  for (size_t j = 0; j < profile.size(); ++j) {
    const auto& entry = profile[j];
    Rational a0 = entry.A(Rational(0));
    if (a0 < 0) throw std::domain_error("A_j(0) < 0");
    if (a0 == 0) {
      if (j != 0) throw std::domain_error("only the first entry may collapse at x = 0");
      collapsed = true;
      Rational needed(2, entry.d + 2);
      if (entry.A.derivative()(Rational(0)) != needed) {
        sol.reason = "collapsed entry needs A'(0) = 2/(d+2)";
        return sol;
      }
      continue;
    }
    if (entry.A.degree() == 1) {
      if (entry.A.derivative()(Rational(0)) < 0)
        throw std::domain_error("linear entries need b_j >= 0");
    } else {
      // e, l, t > 0 keeps A quadratic positive and increasing on [0, inf).
      if (entry.A[2] <= 0 || entry.A[1] <= 0 || entry.A[0] <= 0)
        throw std::domain_error("quadratic entries need e, l, t > 0");
    }
  }

  PolyQ V = profile_half_volume(profile);
  PolyQ inner;
  for (const auto& entry : profile)
    inner = inner + Rational(entry.d) * divmod(V, entry.A).first;
  inner = inner - PolyQ({beta}) * V;
  Rational e_const = collapsed ? Rational(0) : 2 * V(Rational(0));
  PolyQ P = poly_double_antiderivative(inner, e_const, Rational(0));

  if (beta > 0) {
    sol.reason = "rejected: beta > 0 makes the numerator coefficient of x^" +
                 std::to_string(P.degree()) + " equal to " + rat_to_string(P.leading()) +
                 " < 0, so P -> -infinity";
    return sol;
  }
  for (const auto& coeff : P.coeffs()) {
    if (coeff < 0) {
      sol.reason = "numerator has a negative coefficient";
      return sol;
    }
  }
  sol.accepted = true;
  sol.h = RatFuncQ(P, V);
  sol.orbit = collapsed ? "C^" + std::to_string((profile[0].d + 2) / 2) + "-bundle" : "line-bundle";
  return sol;
}

}  // namespace tclab
