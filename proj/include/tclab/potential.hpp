#pragma once

#include "tclab/matrix.hpp"
#include "tclab/multipoly.hpp"
#include "tclab/polytope.hpp"
#include "tclab/ratfunc.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tclab {

/// Numeric closure for the correction term: value and gradient of Psi in
/// floating point (orders 0 and 1 involve logs, so they are never exact).
struct NumericClosure {
  std::function<double(const std::vector<double>&)> value;
  std::function<std::vector<double>(const std::vector<double>&)> grad;
};

/// Symplectic potential Phi = Phi_P + Psi.  The canonical part is determined
/// by the polytope; the correction is carried through its exact Hessian
/// (entries are rational functions of x even when Psi itself needs logs with
/// irrational coefficients).
class Potential {
 public:
  explicit Potential(Polytope polytope);
  Potential(Polytope polytope, std::vector<std::vector<MultiRatFunc>> correction_hessian,
            std::optional<NumericClosure> closure = std::nullopt);

  const Polytope& polytope() const { return polytope_; }
  size_t dim() const { return polytope_.dim(); }
  bool has_correction() const { return !correction_.empty(); }
  const std::vector<std::vector<MultiRatFunc>>& correction_hessian() const { return correction_; }
  const std::optional<NumericClosure>& closure() const { return closure_; }

  /// Exact partial of the correction Hessian entry (k,l), differentiated by
  /// the multi-index `extra`, evaluated at x.  Zero without a correction.
  Rational correction_entry(size_t k, size_t l, const std::vector<unsigned>& extra,
                            const RatVec& x) const;

  /// Floating-point Phi and grad Phi (canonical logs plus the closure).
  double phi_value(const std::vector<double>& x) const;
  std::vector<double> phi_grad(const std::vector<double>& x) const;

 private:
  Polytope polytope_;
  std::vector<std::vector<MultiRatFunc>> correction_;
  std::optional<NumericClosure> closure_;
  // cache of differentiated correction entries, keyed by (k, l, extra)
  mutable std::map<std::tuple<size_t, size_t, std::vector<unsigned>>, MultiRatFunc> dcache_;
};

/// Derivative table of the canonical potential Phi_P = 1/2 sum l_m log l_m
/// at an interior point: total orders 2..max_order exact, orders 0..1 float.
struct JetTable {
  size_t n = 0;
  int max_order = 4;
  std::map<std::vector<unsigned>, Rational> exact;  // |alpha| in [2, max_order]
  double value = 0;
  std::vector<double> grad;

  const Rational& fetch(const std::vector<unsigned>& alpha) const;
};

JetTable canonical_jets(const Polytope& P, const RatVec& x, int max_order = 4);

/// Exact metric data at an interior point: the Hessian h^{-1} = Hess(Phi),
/// its inverse h, det(h), and all derivatives of h and det(h) to order two.
struct MetricPoint {
  RatVec x;
  size_t n = 0;
  Mat<Rational> h_inv, h;
  Rational D;      // det(h_inv)
  Rational det_h;  // 1/D
  std::vector<Mat<Rational>> dh_inv, dh;                 // index p
  std::vector<std::vector<Mat<Rational>>> d2h_inv, d2h;  // indices p, q
  RatVec d_det_h;                                        // d_p det(h)
  Mat<Rational> d2_det_h;                                // d_p d_q det(h)
};

/// Throws std::domain_error("not a metric point") when the Hessian fails to
/// be positive definite, and on boundary/exterior points.
MetricPoint metric_at(const Potential& pot, const RatVec& x);

/// Abreu boundary behaviour check: delta(x) = [det(h^{-1}) prod l_m]^{-1}
/// sampled at inward offsets 1e-2, 1e-3, 1e-4 from facet midpoints and
/// vertices.  Pass iff every sample is positive and the per-site sequence
/// converges (relative spread < 1e-1 between the two finest samples).
struct BoundarySite {
  RatVec base;
  std::string kind;  // "facet" | "vertex"
  std::vector<double> delta_samples;
  bool positive = false;
  bool converged = false;
};

struct BoundaryCheck {
  bool pass = false;
  std::vector<BoundarySite> sites;
};

BoundaryCheck boundary_determinant_check(const Potential& pot);

/// Newton inversion of u = dPhi/dx for n=1 potentials (Legendre dual).
double legendre_x_of_u(const Potential& pot, double u);

/// Numeric closure for a cohomogeneity-one correction given by an exact
/// univariate f_xx: integrates twice from x1 = 0.
NumericClosure closure_from_fxx(const RatFuncQ& fxx, size_t nvars);

/// Catalog potentials carrying their exact corrections:
///   "cp1", "cp2", "cp1xcp1", "hexagon"        -- canonical
///   "blowup1-extremal" (param a)              -- Calabi extremal metric
///   "sakane6-einstein"                        -- Kahler-Einstein in dim 6
Potential potential_catalog(const std::string& name,
                            const std::map<std::string, Rational>& params = {});

}  // namespace tclab
