#include "tclab/cohom1.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tclab {

void validate_fiber_data(const FiberData& w) {
  if (w.empty()) throw std::invalid_argument("fiber data must have at least one entry");
  for (const auto& entry : w) {
    if (entry.d < 2 || entry.d % 2 != 0)
      throw std::invalid_argument("fiber dimensions must be even and >= 2");
  }
}

PolyQ half_volume_poly(const FiberData& w) {
  PolyQ q = PolyQ({Rational(1)});
  for (const auto& entry : w) {
    PolyQ A({entry.a, entry.b});
    for (int i = 0; i < entry.d / 2; ++i) q = q * A;
  }
  return q;
}

RatFuncQ h_from_scalar(const FiberData& w, const PolyQ& S, const Rational& e, const Rational& f) {
  validate_fiber_data(w);
  PolyQ Q = half_volume_poly(w);
  PolyQ inner;
  for (const auto& entry : w) {
    PolyQ A({entry.a, entry.b});
    inner = inner + Rational(entry.d) * divmod(Q, A).first;
  }
  inner = inner - S * Q;
  PolyQ P = poly_double_antiderivative(inner, e, f);
  return RatFuncQ(P, Q);
}

RatFuncQ scalar_of_h(const FiberData& w, const RatFuncQ& h) {
  validate_fiber_data(w);
  RatFuncQ sum_b, sum_b2, sum_inv;
  for (const auto& entry : w) {
    RatFuncQ A(PolyQ({entry.a, entry.b}));
    RatFuncQ d(Rational(entry.d));
    sum_b = sum_b + d * RatFuncQ(Rational(entry.b)) / A;
    sum_b2 = sum_b2 + d * RatFuncQ(entry.b * entry.b) / (A * A);
    sum_inv = sum_inv + d / A;
  }
  RatFuncQ hp = h.derivative();
  RatFuncQ hpp = hp.derivative();
  RatFuncQ half(Rational(1, 2)), quarter(Rational(1, 4));
  return -hpp - hp * sum_b + h * (half * sum_b2 - quarter * sum_b * sum_b) + sum_inv;
}

namespace {

// h = P/Q reduced; exact endpoint smoothness h(p) = 0, h'(p) = s.
bool endpoint_smooth(const RatFuncQ& h, const Rational& p, const Rational& slope) {
  if (h.den()(p) == 0) return false;
  return h.num()(p) == 0 && h.derivative()(p) == slope;
}

std::string orbit_descriptor(const FiberData& w, const Rational& endpoint) {
  int collapsed_dim = 0;
  for (const auto& entry : w)
    if (entry.A(endpoint) == 0) collapsed_dim += entry.d;
  if (collapsed_dim == 0) return "S1-collapse";
  return "CP^" + std::to_string((collapsed_dim + 2) / 2 - 1) + "-collapse";
}

}  // namespace

ExtremalSolution solve_compact_extremal(const FiberData& w, const Rational& x0, const Rational& x1) {
  validate_fiber_data(w);
  if (!(x0 < x1)) throw std::invalid_argument("empty interval");
  // Every A_j must be positive on [x0, x1] except for a collapse at one end.
  for (const auto& entry : w) {
    Rational l = entry.A(x0), r = entry.A(x1);
    if (l < 0 || r < 0 || (l == 0 && r == 0))
      throw std::domain_error("A_j must be positive on the interval (collapse allowed at one end)");
  }

  std::vector<std::tuple<int, Rational, Rational>> entries;
  for (const auto& e : w) entries.emplace_back(e.d, e.b, e.a);
  auto core = solve_compact_core<Rational>(entries, x0, x1);

  ExtremalSolution sol;
  sol.h = RatFuncQ(core.P, core.Q);
  sol.alpha = core.alpha;
  sol.beta = core.beta;
  sol.e = core.e;
  sol.f = core.f;
  sol.x0 = x0;
  sol.x1 = x1;
  sol.smooth_left = endpoint_smooth(sol.h, x0, Rational(2));
  sol.smooth_right = endpoint_smooth(sol.h, x1, Rational(-2));
  sol.left_orbit = orbit_descriptor(w, x0);
  sol.right_orbit = orbit_descriptor(w, x1);
  // Q > 0 inside, so positivity of h on (x0, x1) is positivity of P.
  sol.positivity = sturm_sign_certificate(core.P, x0, x1, true, true);
  return sol;
}

OrbitConditionReport special_orbit_conditions(const FiberData& w, const Rational& endpoint,
                                              const std::vector<size_t>& collapsing) {
  validate_fiber_data(w);
  OrbitConditionReport report;
  auto add = [&](std::string desc, bool ok) {
    report.items.push_back({std::move(desc), ok});
    if (!ok) report.all_satisfied = false;
  };
  if (collapsing.empty()) {
    add("no collapsing factors: only h(p)=0, h'(p)=+-2 required", true);
    return report;
  }
  int k_minus_1 = 0;
  Rational sum_d_over_b(0);
  bool b_ok = true;
  for (size_t j : collapsing) {
    if (j >= w.size()) throw std::out_of_range("collapsing index out of range");
    const auto& entry = w[j];
    if (entry.A(endpoint) != 0)
      throw std::invalid_argument("collapsing entry does not vanish at the endpoint");
    if (entry.b == 0) {
      b_ok = false;
      continue;
    }
    k_minus_1 += entry.d;
    sum_d_over_b += Rational(entry.d) / abs(entry.b);
  }
  if (!b_ok) {
    add("collapsing entries must have b != 0", false);
    return report;
  }
  long long k = k_minus_1 + 1;
  Rational required((k * k - 1), 2);
  std::ostringstream os;
  os << "sum d_j/|b_j| = " << rat_to_string(sum_d_over_b) << " must equal (k^2-1)/2 = "
     << rat_to_string(required) << " with k-1 = " << k_minus_1;
  add(os.str(), sum_d_over_b == required);
  if (collapsing.size() == 1) {
    const auto& entry = w[collapsing[0]];
    Rational needed(2, entry.d + 2);
    std::ostringstream os2;
    os2 << "|b_1| = " << rat_to_string(abs(entry.b)) << " must equal 2/(d_1+2) = "
        << rat_to_string(needed);
    add(os2.str(), abs(entry.b) == needed);
  }
  return report;
}

EinsteinResult einstein_h(const FiberData& w, const Rational& lambda, const Rational& x0) {
  validate_fiber_data(w);
  EinsteinResult result;
  bool have_D = false;
  Rational D(0);
  for (const auto& entry : w) {
    if (entry.b == 0) {
      if (lambda * entry.a != 1) {
        result.reason = "infeasible: b_i = 0 requires lambda a_i = 1, got lambda a_i = " +
                        rat_to_string(lambda * entry.a);
        return result;
      }
    } else {
      Rational Di = (1 - lambda * entry.a) / entry.b;
      if (have_D && Di != D) {
        result.reason = "infeasible: (1 - lambda a_i)/b_i differ: " + rat_to_string(D) + " vs " +
                        rat_to_string(Di);
        return result;
      }
      D = Di;
      have_D = true;
    }
  }
  if (!have_D) D = 1 + lambda * x0;  // all b_i = 0: fix D by h'(x0) = 2

  PolyQ Q = half_volume_poly(w);
  PolyQ integrand = PolyQ({D, -lambda}) * Q;
  PolyQ F = integrand.antiderivative();
  PolyQ num = Rational(2) * (F - PolyQ({F(x0)}));
  result.feasible = true;
  result.h = RatFuncQ(num, Q);
  result.D = D;
  return result;
}

NoncompactSolution noncompact_csc(const FiberData& w, const Rational& beta) {
  validate_fiber_data(w);
  NoncompactSolution sol;
  std::vector<size_t> collapsing;
  for (size_t j = 0; j < w.size(); ++j) {
    if (w[j].b < 0 || w[j].a < 0)
      throw std::domain_error("noncompact case requires b_j >= 0 and a_j >= 0");
    if (w[j].a == 0) collapsing.push_back(j);
  }
  if (!collapsing.empty()) {
    auto report = special_orbit_conditions(w, Rational(0), collapsing);
    if (!report.all_satisfied) {
      sol.reason = "collapsed factor violates the special-orbit smoothness conditions";
      return sol;
    }
  }

  PolyQ Q = half_volume_poly(w);
  Rational e, f;
  if (collapsing.empty()) {
    f = 0;
    e = 2 * Q(Rational(0));
  } else {
    e = f = 0;  // collapsed factor: x divides Q and the slope comes out of the x^{(d1+2)/2} term
  }
  PolyQ inner;
  for (const auto& entry : w) {
    PolyQ A({entry.a, entry.b});
    inner = inner + Rational(entry.d) * divmod(Q, A).first;
  }
  inner = inner - PolyQ({beta}) * Q;
  PolyQ P = poly_double_antiderivative(inner, e, f);
  RatFuncQ h(P, Q);

  if (beta > 0) {
    sol.reason = "rejected: beta > 0 makes the numerator coefficient of x^" +
                 std::to_string(P.degree()) + " equal to " + rat_to_string(P.leading()) +
                 " < 0, so P -> -infinity";
    return sol;
  }
  for (const auto& c : P.coeffs()) {
    if (c < 0) {
      sol.reason = "numerator has a negative coefficient";
      return sol;
    }
  }
  sol.accepted = true;
  sol.h = h;
  sol.orbit = collapsing.empty()
                  ? "line-bundle"
                  : "C^" + std::to_string((w[collapsing[0]].d + 2) / 2) + "-bundle";
  return sol;
}

Rational futaki_fiberwise(const FiberData& w, const Rational& x0, const Rational& x1) {
  validate_fiber_data(w);
  PolyQ integrand = PolyQ({Rational(0), Rational(1)}) * half_volume_poly(w);
  PolyQ F = integrand.antiderivative();
  return F(x1) - F(x0);
}

// ---------------------------------------------------------------------------
// Symbolic CSC locus

namespace {

using K1 = RatFunc<Rational>;  // Q(s1)
using K2 = RatFunc<K1>;        // Q(s1)(s2)

// Convert Poly<K1> in s2 (coefficients rational functions of s1) into a
// bivariate MultiPoly in (s1, s2) after clearing denominators.
MultiPoly bivariate_from_nested(const Poly<K1>& p) {
  PolyQ common = PolyQ({Rational(1)});
  for (const auto& c : p.coeffs()) {
    PolyQ g = gcd(common, c.den());
    common = divmod(common * c.den(), g).first;  // lcm
  }
  MultiPoly out(2);
  for (size_t j = 0; j < p.coeffs().size(); ++j) {
    PolyQ coef = p.coeffs()[j].num() * divmod(common, p.coeffs()[j].den()).first;
    for (size_t i = 0; i < coef.coeffs().size(); ++i) {
      if (coef.coeffs()[i] == 0) continue;
      MultiPoly term = MultiPoly::constant(2, coef.coeffs()[i]);
      for (size_t r = 0; r < i; ++r) term = term * MultiPoly::variable(2, 0);
      for (size_t r = 0; r < j; ++r) term = term * MultiPoly::variable(2, 1);
      out = out + term;
    }
  }
  return out;
}

MultiPoly univariate_to_multipoly(const PolyQ& p, size_t nvars, size_t var) {
  MultiPoly out(nvars);
  for (size_t i = 0; i < p.coeffs().size(); ++i) {
    if (p.coeffs()[i] == 0) continue;
    MultiPoly term = MultiPoly::constant(nvars, p.coeffs()[i]);
    for (size_t r = 0; r < i; ++r) term = term * MultiPoly::variable(nvars, var);
    out = out + term;
  }
  return out;
}

// Exact polynomial square root, if one exists.
std::optional<PolyQ> poly_sqrt(const PolyQ& p) {
  if (p.is_zero()) return PolyQ();
  if (p.degree() % 2 != 0) return std::nullopt;
  Rational lead = p.leading();
  if (lead < 0) return std::nullopt;
  BigInt num = rat_num(lead), den = rat_den(lead);
  BigInt ns = boost::multiprecision::sqrt(num), ds = boost::multiprecision::sqrt(den);
  if (ns * ns != num || ds * ds != den) return std::nullopt;
  size_t m = static_cast<size_t>(p.degree()) / 2;
  std::vector<Rational> r(m + 1, Rational(0));
  r[m] = Rational(ns, ds);
  // p[m+i] = 2 r_m r_i + sum_{j=i+1}^{m-1} r_j r_{m+i-j}; solve top-down.
  for (size_t i = m; i-- > 0;) {
    Rational cross(0);
    for (size_t j = i + 1; j < m; ++j) cross += r[j] * r[m + i - j];
    r[i] = (p[m + i] - cross) / (2 * r[m]);
  }
  PolyQ cand(r);
  if (cand * cand == p) return cand;
  return std::nullopt;
}

}  // namespace

CscLocus csc_locus(const std::vector<SymbolicFiberEntry>& entries, size_t nsymbols,
                   const Rational& x0, const Rational& x1, std::vector<std::string> symbol_names) {
  if (nsymbols < 1 || nsymbols > 2) throw std::invalid_argument("csc_locus supports 1 or 2 symbols");
  if (symbol_names.empty()) {
    symbol_names = {"a", "c"};
    symbol_names.resize(nsymbols);
  }
  CscLocus locus;
  locus.symbols = symbol_names;

  MultiPoly num(nsymbols), den(nsymbols);
  if (nsymbols == 1) {
    std::vector<std::tuple<int, K1, K1>> sym;
    for (const auto& e : entries) {
      PolyQ a_poly({e.a_affine.size() > 0 ? e.a_affine[0] : Rational(0),
                    e.a_affine.size() > 1 ? e.a_affine[1] : Rational(0)});
      sym.emplace_back(e.d, K1(PolyQ({e.b})), K1(a_poly));
    }
    auto core = solve_compact_core<K1>(sym, K1(PolyQ({x0})), K1(PolyQ({x1})));
    num = univariate_to_multipoly(core.alpha.num(), 1, 0);
    den = univariate_to_multipoly(core.alpha.den(), 1, 0);
  } else {
    std::vector<std::tuple<int, K2, K2>> sym;
    for (const auto& e : entries) {
      Rational a0 = e.a_affine.size() > 0 ? e.a_affine[0] : Rational(0);
      Rational a1 = e.a_affine.size() > 1 ? e.a_affine[1] : Rational(0);
      Rational a2 = e.a_affine.size() > 2 ? e.a_affine[2] : Rational(0);
      K1 c0(PolyQ({a0, a1}));
      K1 c1(PolyQ({a2}));
      K2 a_val(Poly<K1>({c0, c1}));
      sym.emplace_back(e.d, K2(K1(PolyQ({e.b}))), a_val);
    }
    auto core = solve_compact_core<K2>(sym, K2(K1(PolyQ({x0}))), K2(K1(PolyQ({x1}))));
    num = bivariate_from_nested(core.alpha.num());
    den = bivariate_from_nested(core.alpha.den());
  }

  locus.alpha_num = num;
  locus.alpha_den = den;
  if (num.is_zero()) {
    locus.identically_zero = true;
    return locus;
  }

  auto a_value = [&](const SymbolicFiberEntry& e, const std::vector<Rational>& params) {
    Rational a = e.a_affine.empty() ? Rational(0) : e.a_affine[0];
    for (size_t s = 0; s < nsymbols; ++s)
      if (s + 1 < e.a_affine.size()) a += e.a_affine[s + 1] * params[s];
    return a;
  };

  // Feasibility of a parameter point: every A_j > 0 at both interval ends
  // (A_j is affine in x, so endpoint positivity is positivity on [x0, x1]).
  auto feasible_at = [&](const std::vector<Rational>& params) {
    for (const auto& e : entries) {
      Rational a = a_value(e, params);
      if (e.b * x0 + a <= 0 || e.b * x1 + a <= 0) return false;
    }
    return true;
  };

  // Independent cross-check of a locus point: rerun the rational solver at
  // the parameters and test alpha == 0 exactly.
  auto alpha_vanishes_at = [&](const std::vector<Rational>& params) -> std::optional<bool> {
    std::vector<std::tuple<int, Rational, Rational>> plain;
    for (const auto& e : entries) plain.emplace_back(e.d, e.b, a_value(e, params));
    try {
      auto core = solve_compact_core<Rational>(plain, x0, x1);
      return core.alpha == 0;
    } catch (const std::domain_error&) {
      return std::nullopt;  // singular boundary system at this sample
    }
  };

  if (nsymbols == 1) {
    // Factor the univariate numerator: rational roots give the locus points.
    PolyQ p;
    {
      std::vector<Rational> c;
      unsigned dmax = num.degree_in(0);
      c.assign(dmax + 1, Rational(0));
      for (const auto& [e, coef] : num.terms()) c[e[0]] = coef;
      p = PolyQ(std::move(c));
    }
    for (const auto& [factor, mult] : squarefree_decomposition(p)) {
      (void)mult;
      // Linear and quadratic pieces resolve exactly.
      if (factor.degree() == 1) {
        Rational root = -factor[0] / factor[1];
        auto vanishes = alpha_vanishes_at({root});
        if (vanishes.has_value() && !*vanishes) continue;  // spurious (cleared-content) factor
        CscLocus::Piece piece;
        piece.factor = univariate_to_multipoly(primitive_part(factor), 1, 0);
        piece.description = symbol_names[0] + " = " + rat_to_string(root);
        piece.feasible = feasible_at({root});
        piece.note = piece.feasible ? "" : "outside the feasibility region (A_j > 0)";
        locus.pieces.push_back(std::move(piece));
      } else {
        CscLocus::Piece piece;
        piece.factor = univariate_to_multipoly(primitive_part(factor), 1, 0);
        piece.description = "root of " + factor.to_string(symbol_names[0]);
        piece.feasible = false;
        piece.note = "not factored further";
        locus.pieces.push_back(std::move(piece));
      }
    }
    return locus;
  }

  // Two symbols: view the numerator as a polynomial in s1 over Q[s2]; degree
  // <= 2 factors split via a perfect-square discriminant.
  unsigned deg1 = num.degree_in(0);
  std::vector<PolyQ> coeff_in_s2(deg1 + 1);  // index: power of s1
  for (unsigned i = 0; i <= deg1; ++i) coeff_in_s2[i] = PolyQ();
  {
    std::vector<std::vector<Rational>> table(deg1 + 1);
    unsigned deg2 = num.degree_in(1);
    for (auto& row : table) row.assign(deg2 + 1, Rational(0));
    for (const auto& [e, coef] : num.terms()) table[e[0]][e[1]] = coef;
    for (unsigned i = 0; i <= deg1; ++i) coeff_in_s2[i] = PolyQ(std::vector<Rational>(table[i]));
  }

  auto emit_linear_in_s1 = [&](const PolyQ& lin_coeff, const PolyQ& const_coeff) {
    // lin_coeff(s2) * s1 + const_coeff(s2) = 0
    PolyQ g = gcd(lin_coeff, const_coeff);
    PolyQ A = primitive_part(divmod(lin_coeff, g).first);
    PolyQ B = primitive_part(divmod(const_coeff, g).first);
    // Re-scale so the pair (A, B) is primitive jointly.
    MultiPoly factor = univariate_to_multipoly(A, 2, 1) * MultiPoly::variable(2, 0) +
                       univariate_to_multipoly(B, 2, 1);
    CscLocus::Piece piece;
    piece.factor = factor;
    piece.description = factor.to_string(symbol_names) + " = 0";
    // Witness search along the curve s1 = -B/A at a few sample s2, with an
    // exact alpha == 0 cross-check through the rational solver.
    piece.feasible = false;
    int confirmed = 0;
    for (long long t = 2; t <= 60; ++t) {
      Rational s2v(t, 1);
      if (A(s2v) == 0) continue;
      Rational s1v = -B(s2v) / A(s2v);
      auto vanishes = alpha_vanishes_at({s1v, s2v});
      if (!vanishes.has_value()) continue;
      if (!*vanishes) {
        piece.note = "dropped: alpha does not vanish on this factor";
        return;  // spurious factor
      }
      ++confirmed;
      if (!piece.feasible && feasible_at({s1v, s2v})) {
        piece.feasible = true;
        piece.note = "witness at (" + rat_to_string(s1v) + ", " + rat_to_string(s2v) + ")";
      }
      if (confirmed >= 3 && piece.feasible) break;
    }
    if (!piece.feasible && piece.note.empty()) piece.note = "no witness found in probe set";
    locus.pieces.push_back(std::move(piece));
  };

  if (deg1 == 1) {
    emit_linear_in_s1(coeff_in_s2[1], coeff_in_s2[0]);
  } else if (deg1 == 2) {
    const PolyQ &A = coeff_in_s2[2], &B = coeff_in_s2[1], &C = coeff_in_s2[0];
    PolyQ disc = B * B - Rational(4) * A * C;
    auto sq = poly_sqrt(disc);
    if (sq) {
      // roots s1 = (-B +- R)/(2A): factors 2A s1 + B -+ R.
      emit_linear_in_s1(Rational(2) * A, B - *sq);
      emit_linear_in_s1(Rational(2) * A, B + *sq);
    } else {
      CscLocus::Piece piece;
      piece.factor = num;
      piece.description = "quadratic in " + symbol_names[0] + " with non-square discriminant";
      piece.note = "not factored";
      locus.pieces.push_back(std::move(piece));
    }
  } else {
    CscLocus::Piece piece;
    piece.factor = num;
    piece.description = "degree in " + symbol_names[0] + " exceeds 2";
    piece.note = "not factored";
    locus.pieces.push_back(std::move(piece));
  }
  return locus;
}

// ---------------------------------------------------------------------------
// Section 6 toric families

namespace {

ToricFamilyResult toric_family(const FiberData& w, const std::vector<RatFuncQ>& canonical_terms) {
  auto sol = solve_compact_extremal(w, Rational(-1), Rational(1));
  ToricFamilyResult out;
  out.h = sol.h;
  out.alpha = sol.alpha;
  out.beta = sol.beta;
  RatFuncQ fxx = RatFuncQ(Rational(1)) / sol.h;
  for (const auto& term : canonical_terms) fxx = fxx - term;
  out.fxx = fxx;
  return out;
}

}  // namespace

ToricFamilyResult blowup_extremal_family(const Rational& a) {
  if (a < 0) throw std::domain_error("blowup family requires a >= 0");
  FiberData w{{2, Rational(-1, 2), (a + 1) / 2}};
  // f_xx = 1/h - 1/(1-x^2) - (1/2)/(a+1-x)
  std::vector<RatFuncQ> canonical{
      RatFuncQ(PolyQ({Rational(1)}), PolyQ({Rational(1), Rational(0), Rational(-1)})),
      RatFuncQ(PolyQ({Rational(1, 2)}), PolyQ({a + 1, Rational(-1)}))};
  return toric_family(w, canonical);
}

ToricFamilyResult sixdim_extremal_family(const Rational& a, const Rational& c) {
  if (a <= 0 || c <= 0) throw std::domain_error("sixdim family requires a > 0 and c > 0");
  FiberData w{{2, Rational(-1, 2), (a + 1) / 2}, {2, Rational(1, 2), (c + 1) / 2}};
  // f_xx = 1/h - 1/(1-x^2) - (1/2)/(a+1-x) - (1/2)/(c+1+x)
  std::vector<RatFuncQ> canonical{
      RatFuncQ(PolyQ({Rational(1)}), PolyQ({Rational(1), Rational(0), Rational(-1)})),
      RatFuncQ(PolyQ({Rational(1, 2)}), PolyQ({a + 1, Rational(-1)})),
      RatFuncQ(PolyQ({Rational(1, 2)}), PolyQ({c + 1, Rational(1)}))};
  return toric_family(w, canonical);
}

}  // namespace tclab
