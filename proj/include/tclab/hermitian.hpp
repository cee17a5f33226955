#pragma once

#include "tclab/cohom1.hpp"
#include "tclab/poly.hpp"
#include "tclab/ratfunc.hpp"
#include "tclab/sturm.hpp"

#include <string>
#include <vector>

namespace tclab {

/// One fiber factor of a Hermitian (not necessarily Kahler) metric over the
/// interval: size function A(x) of degree <= 2 and circle-bundle coupling b.
/// Linear A with mu = 0 is the Kahler case; quadratic A of the form
/// e(x+c)^2 - b^2/(4e) is the non-Kahler branch.
struct ProfileEntry {
  int d = 2;
  PolyQ A;
  Rational b;
};
using FiberProfile = std::vector<ProfileEntry>;

/// mu = 2A''/A - (A'/A)^2 + b^2/A^2, as an exact rational function.
RatFuncQ mu_invariant(const PolyQ& A, const Rational& b);

/// sum d_j mu_j; its exact vanishing gates the scalar curvature integration.
RatFuncQ sum_d_mu(const FiberProfile& profile);

/// V^{1/2} = prod A_j^{d_j/2}.
PolyQ profile_half_volume(const FiberProfile& profile);

/// Scalar curvature of the metric (1/h, h, A_j Id) from the profile:
///   S = -h'' - h' sum d_j A_j'/A_j
///       + h [ -sum d_j A_j''/A_j + 3/4 sum d_j (A_j'/A_j)^2
///             - 1/4 (sum d_j A_j'/A_j)^2 - 1/4 sum d_j b_j^2/A_j^2 ]
///       + sum d_j/A_j.
RatFuncQ wang_scalar(const FiberProfile& profile, const RatFuncQ& h);

/// h = (1/V^{1/2}) int int (sum d_j/A_j - S) V^{1/2} dx dx with constants
/// (e, f) at x = 0; requires sum d_j mu_j == 0 exactly.
RatFuncQ general_h_integration(const FiberProfile& profile, const Rational& S, const Rational& e,
                               const Rational& f);

/// Same integration with a caller-supplied orbit scalar S* in place of
/// sum d_j/A_j (the cohomogeneity-one form without a complex structure);
/// (S* - S) V^{1/2} must reduce to a polynomial.
RatFuncQ general_h_integration(const FiberProfile& profile, const RatFuncQ& S_star,
                               const Rational& S, const Rational& e, const Rational& f);

/// The constant scalar curvature Hermitian family on Hirzebruch surfaces:
/// b = |q|/2, A_1 = ((l^2-b^2)/2) x^2 + l x + 1/2, S = 6.  Valid iff
/// |l| + b < 1 (so A_1 > 0 on [-1, 1]); only q = 0 and q = -1 admit any l.
struct HermitianFamilyResult {
  bool valid = false;
  std::string violated;  // inequality that failed, when invalid
  Rational b;
  PolyQ A1;
  RatFuncQ h;
  Rational S;
};

HermitianFamilyResult hirzebruch_hermitian_family(long long q, const Rational& l);

/// Compact CSC solve on [0, 1] for profiles with m-1 linear entries sharing
/// c_j = a_j/b_j = c and one quadratic entry A_m = e(x+c_m)^2 - b_m^2/(4e):
/// the left-end conditions and h(1) = 0 are exact; the remaining boundary
/// function B(c_m) = h'(1) + 2 is bisected in c_m at fixed c.
struct CompactHermitianSpec {
  std::vector<std::pair<int, Rational>> linear;  // (d_j, b_j), b_j > 0, a_j = b_j c
  int d_quad = 2;
  Rational e_quad = Rational(1);
  Rational b_quad = Rational(1);
};

struct CompactHermitianResult {
  bool found = false;
  std::string message;
  Rational c, c_m;
  Rational beta;
  double boundary_residual = 0;  // |h'(1) + 2| at the returned c_m
  RatFuncQ h;
  SignCertificate positivity;
};

CompactHermitianResult solve_compact_hermitian(const CompactHermitianSpec& spec, const Rational& c);

/// Scan c over a range (geometric steps) and return the first solution.
CompactHermitianResult solve_compact_hermitian_scan(const CompactHermitianSpec& spec,
                                                    const Rational& c_lo, const Rational& c_hi);

/// Noncompact constant scalar curvature on [0, infinity): quadratic entries
/// need e, l, t > 0 (or the collapsed first entry A_1 = e x^2 + b_1 x with
/// b_1 = 2/(d_1+2)); accepts beta <= 0 by coefficient positivity.
NoncompactSolution noncompact_hermitian(const FiberProfile& profile, const Rational& beta);

}  // namespace tclab
