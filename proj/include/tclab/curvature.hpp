#pragma once

#include "tclab/cohom1.hpp"
#include "tclab/potential.hpp"

#include <vector>

namespace tclab {

/// Fiber weights of a fiberwise Kahler toric metric over an n-dimensional
/// toric base: A_j(x) = <b_vec, x> + a with even fiber dimension d.
struct FiberWeightEntry {
  int d = 2;
  RatVec b_vec;
  Rational a;

  Rational A(const RatVec& x) const {
    Rational acc = a;
    for (size_t i = 0; i < b_vec.size(); ++i) acc += b_vec[i] * x[i];
    return acc;
  }
};
using FiberWeight = std::vector<FiberWeightEntry>;

/// Abreu's formula S = -d^2 h_ij / dx_i dx_j (summed over both indices).
Rational abreu_scalar(const MetricPoint& mp);

/// Simplified form S = -(1/det h) h_ij (det h)_{,ij}; equals abreu_scalar
/// identically (adjugate lemma).
Rational abreu_scalar_simplified(const MetricPoint& mp);

/// Divergence of the adjugate matrix M = h / det(h): d_i M_ij, identically
/// zero for every Hessian-derived metric.
RatVec adjugate_divergence(const MetricPoint& mp);

/// Value and first/second derivatives of an invariant function at a point.
struct FnJet {
  Rational value;
  RatVec grad;
  Mat<Rational> hess;
};

/// (Laplacian, quotient Laplacian) of an invariant function:
///   D f  = h_ij f_ij + (1/det h) h_ij (det h)_i f_j
///   Dq f = h_ij f_ij + (1/2)(1/det h) h_ij (det h)_j f_i
std::pair<Rational, Rational> laplacians(const MetricPoint& mp, const FnJet& f);

/// Least-squares affine fit S ~ <alpha, x> + beta over sample points; an
/// exactly zero residual certifies extremality on the samples.
struct ExtremalFitResult {
  RatVec alpha;
  Rational beta;
  Rational max_residual;
};

ExtremalFitResult extremal_fit(const Potential& pot, const std::vector<RatVec>& points);

/// Residual of the differentiated Einstein condition
///   M_ik d_k (M_lj d_l det h) + 2 lambda M_ij  (zero iff Einstein at x).
Mat<Rational> einstein_residual(const MetricPoint& mp, const Rational& lambda);

/// Scalar curvature of a fiberwise Kahler toric metric (five-term formula).
Rational fkt_scalar(const MetricPoint& mp, const FiberWeight& w);

/// Residuals of the two fiberwise Einstein equations:
///   A: h_ik d_k (h_lj d_l log(det h V^{1/2})) + 2 lambda h_ij
///   B: (h_kl d_l log(det h V^{1/2}) + 2 lambda x_k) b_ki - 2 (1 - lambda a_i)
std::pair<Mat<Rational>, RatVec> fkt_einstein_residual(const MetricPoint& mp, const FiberWeight& w,
                                                       const Rational& lambda);

/// Derdzinski quantity S^3 + 6 S DS - 12 <grad S, grad S> per point, for an
/// extremal metric with S = <alpha, x> + beta (n = 2 only).
struct DerdzinskiReport {
  std::vector<Rational> values;
  bool is_constant = false;
};

DerdzinskiReport derdzinski_check(const Potential& pot, const RatVec& alpha, const Rational& beta,
                                  const std::vector<RatVec>& points);

/// Residual of the conformal Hermitian-Einstein equation for g-bar = S^{-2} g
/// (n = 2); throws on the singular locus S(x) = 0.
Mat<Rational> hermitian_einstein_toric_residual(const MetricPoint& mp, const RatVec& alpha,
                                                const Rational& beta, const Rational& lambda);

/// Numeric validation of the integrated Einstein form: the combination
///   log(det h V^{1/2}) - sum_j (-2 lambda x_j + C_j) dPhi/dx_j - 2 lambda Phi
/// must be constant across sample points (tolerance handled by the caller).
struct IntegratedEinsteinReport {
  std::vector<double> values;
  double max_deviation = 0;
};

IntegratedEinsteinReport integrated_einstein_check(const Potential& pot, const FiberWeight& w,
                                                   double lambda, const std::vector<double>& C,
                                                   const std::vector<RatVec>& points);

// Convenience wrappers evaluating metric_at internally.
Rational abreu_scalar(const Potential& pot, const RatVec& x);
Rational abreu_scalar_simplified(const Potential& pot, const RatVec& x);
RatVec adjugate_divergence(const Potential& pot, const RatVec& x);

}  // namespace tclab
