#pragma once

#include "tclab/multipoly.hpp"
#include "tclab/poly.hpp"
#include "tclab/ratfunc.hpp"
#include "tclab/sturm.hpp"

#include <string>
#include <vector>

namespace tclab {

/// One fiber summand of a cohomogeneity-one fiberwise Kahler toric metric:
/// a Kahler-Einstein factor of real dimension d scaled by A(x) = b x + a.
struct FiberEntry {
  int d = 2;
  Rational b, a;
  Rational A(const Rational& x) const { return b * x + a; }
};
using FiberData = std::vector<FiberEntry>;

void validate_fiber_data(const FiberData& w);

/// V^{1/2} = prod (b_j x + a_j)^{d_j/2}; a polynomial since every d_j is even.
PolyQ half_volume_poly(const FiberData& w);

/// Solve the scalar curvature ODE for h by double integration:
///   h = (1/V^{1/2}) int int (sum d_j/A_j - S) V^{1/2} dx dx
/// with integration constants h(0) = f, (numerator slope at 0) = e.
RatFuncQ h_from_scalar(const FiberData& w, const PolyQ& S, const Rational& e, const Rational& f);

/// Exact scalar curvature of the metric determined by h:
///   S = -h'' - h' sum d_j b_j/A_j
///       + h (1/2 sum d_j b_j^2/A_j^2 - 1/4 (sum d_j b_j/A_j)^2) + sum d_j/A_j.
RatFuncQ scalar_of_h(const FiberData& w, const RatFuncQ& h);

/// Compact extremal solution on [x0, x1]: S = alpha x + beta with
/// h(x0) = h(x1) = 0, h'(x0) = 2, h'(x1) = -2.
struct ExtremalSolution {
  RatFuncQ h;
  Rational alpha, beta;
  Rational e, f;  // integration constants fixed by the left-end conditions
  Rational x0, x1;
  bool smooth_left = false, smooth_right = false;
  std::string left_orbit, right_orbit;  // "S1-collapse" or "CP^k-collapse"
  SignCertificate positivity;           // of the numerator on the open interval
};

ExtremalSolution solve_compact_extremal(const FiberData& w, const Rational& x0, const Rational& x1);

/// Smoothness constraints at an endpoint where the entries in
/// `collapsing` vanish: b_1 = 2/(d_1+2) for a single collapsing factor,
/// and in general sum d_j/b_j = (k^2-1)/2 with k - 1 = sum d_j.
struct OrbitConditionReport {
  struct Item {
    std::string description;
    bool satisfied = false;
  };
  std::vector<Item> items;
  bool all_satisfied = true;
};

OrbitConditionReport special_orbit_conditions(const FiberData& w, const Rational& endpoint,
                                              const std::vector<size_t>& collapsing);

/// Kahler-Einstein solve via the integrated first-order equation
///   h = (2/V^{1/2}) int (D - lambda x) V^{1/2} dx,
/// consistency D = (1 - lambda a_i)/b_i for all b_i != 0 and
/// 1 = lambda a_i whenever b_i = 0.  The constant of integration is fixed
/// by h(x0) = 0.
struct EinsteinResult {
  bool feasible = false;
  std::string reason;
  RatFuncQ h;
  Rational D;
};

EinsteinResult einstein_h(const FiberData& w, const Rational& lambda, const Rational& x0);

/// Noncompact constant-scalar-curvature metric on [0, infinity).  Accepts
/// beta <= 0 with an all-nonnegative numerator-coefficient certificate;
/// rejects beta > 0 with the negative leading coefficient as witness.
struct NoncompactSolution {
  bool accepted = false;
  std::string reason;
  RatFuncQ h;
  std::string orbit;  // "line-bundle" or "C^k-bundle"
};

NoncompactSolution noncompact_csc(const FiberData& w, const Rational& beta);

/// Exact int_{x0}^{x1} x V^{1/2}(x) dx; zero is necessary for a
/// Kahler-Einstein metric (fiberwise Futaki obstruction).
Rational futaki_fiberwise(const FiberData& w, const Rational& x0, const Rational& x1);

/// Constant-scalar-curvature locus of a fiber family whose a_j depend
/// affinely on one or two symbolic parameters: the vanishing set of
/// alpha(params), factored, with feasibility against A_j > 0 on [x0, x1].
struct SymbolicFiberEntry {
  int d = 2;
  Rational b;
  std::vector<Rational> a_affine;  // a = a_affine[0] + a_affine[1] s1 (+ a_affine[2] s2)
};

struct CscLocus {
  bool identically_zero = false;
  MultiPoly alpha_num{0}, alpha_den{0};  // polynomials in the symbols
  struct Piece {
    MultiPoly factor{0};
    std::string description;
    bool feasible = false;
    std::string note;
  };
  std::vector<Piece> pieces;
  std::vector<std::string> symbols;
};

CscLocus csc_locus(const std::vector<SymbolicFiberEntry>& entries, size_t nsymbols,
                   const Rational& x0, const Rational& x1,
                   std::vector<std::string> symbol_names = {});

/// Section 6 families in toric coordinates.  The solver output h is mapped
/// back to the potential correction via f_xx = 1/h - 1/(1-x^2) - (canonical
/// fiber facet terms); S = alpha x + beta in the same x.
struct ToricFamilyResult {
  RatFuncQ h;      // cohomogeneity-one profile
  RatFuncQ fxx;    // correction Hessian entry for the toric potential
  Rational alpha, beta;
};

/// Extremal metrics on the one-point blow-up of CP^2, parameter a in (0, 2):
/// fiber data {(2, -1/2, (a+1)/2)} on [-1, 1].
ToricFamilyResult blowup_extremal_family(const Rational& a);

/// Extremal metrics on the CP^1-bundle over CP^1 x CP^1 with twist (1,-1):
/// fiber data {(2, -1/2, (a+1)/2), (2, 1/2, (c+1)/2)} on [-1, 1].
ToricFamilyResult sixdim_extremal_family(const Rational& a, const Rational& c);

// ---------------------------------------------------------------------------
// Templated core: the same compact-extremal linear algebra over any exact
// field K (Rational, Q(s1), Q(s1)(s2)).

template <class K>
struct CompactCore {
  Poly<K> P, Q;
  K alpha, beta, e, f;
};

template <class K>
CompactCore<K> solve_compact_core(const std::vector<std::tuple<int, K, K>>& entries, const K& x0,
                                  const K& x1) {
  Poly<K> Q = Poly<K>::constant(K(1));
  for (const auto& [d, b, a] : entries) {
    Poly<K> A({a, b});
    for (int i = 0; i < d / 2; ++i) Q = Q * A;
  }
  Poly<K> G0;
  for (const auto& [d, b, a] : entries) {
    Poly<K> A({a, b});
    auto [quot, rem] = divmod(Q, A);
    if (!rem.is_zero()) throw std::logic_error("V^{1/2}/A_j must divide exactly");
    G0 = G0 + K(d) * quot;
  }
  Poly<K> G1 = Poly<K>::x() * Q;
  Poly<K> G2 = Q;

  const K zero(0);
  Poly<K> P0 = poly_double_antiderivative(G0, zero, zero);
  Poly<K> P1 = poly_double_antiderivative(G1, zero, zero);
  Poly<K> P2 = poly_double_antiderivative(G2, zero, zero);

  K p0 = P0(x0), p1 = P1(x0), p2 = P2(x0);
  K q0 = P0.derivative()(x0), q1 = P1.derivative()(x0), q2 = P2.derivative()(x0);
  K u0 = P0(x1), u1 = P1(x1), u2 = P2(x1);
  K v0 = P0.derivative()(x1), v1 = P1.derivative()(x1), v2 = P2.derivative()(x1);
  K Qx0 = Q(x0), Qx1 = Q(x1);
  K span = x1 - x0;

  // P = P0 - alpha P1 - beta P2 + e x + f with
  //   e = 2 Q(x0) - q0 + alpha q1 + beta q2   (from P'(x0) = 2 Q(x0))
  //   f = -p0 + alpha p1 + beta p2 - e x0     (from P(x0) = 0)
  // substituted into P(x1) = 0 and P'(x1) = -2 Q(x1):
  K m11 = p1 - u1 + q1 * span;
  K m12 = p2 - u2 + q2 * span;
  K r1 = K(0) - (u0 - p0 + (K(2) * Qx0 - q0) * span);
  K m21 = q1 - v1;
  K m22 = q2 - v2;
  K r2 = K(0) - (v0 - q0 + K(2) * Qx0 + K(2) * Qx1);

  K det = m11 * m22 - m12 * m21;
  if (det == K(0)) throw std::domain_error("singular boundary system");
  K alpha = (r1 * m22 - r2 * m12) / det;
  K beta = (m11 * r2 - m21 * r1) / det;
  K e = K(2) * Qx0 - q0 + alpha * q1 + beta * q2;
  K f = K(0) - p0 + alpha * p1 + beta * p2 - e * x0;

  Poly<K> P = P0 - alpha * P1 - beta * P2 + Poly<K>({f, e});
  return CompactCore<K>{P, Q, alpha, beta, e, f};
}

}  // namespace tclab
