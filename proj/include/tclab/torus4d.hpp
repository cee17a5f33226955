#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace tclab {

/// Coprime integer pairs describing a T^2 action on a compact simply
/// connected four manifold (cyclic list; adjacent determinants +-1).
struct OrbitData {
  std::vector<std::pair<long long, long long>> pairs;
};

struct OrbitInvariants {
  long long chi = 0;
  long long tau = 0;
  bool spin = false;
  bool hitchin_thorpe_pass = false;  // 2 chi >= 3 |tau|
};

OrbitInvariants orbit_invariants(const OrbitData& data);

/// T^2-invariant metric g = A dR^2 + B dT^2 + h_ij dphi_i dphi_j on an open
/// coordinate rectangle; the closures must be smooth (they are evaluated
/// slightly outside the rectangle by the difference stencils).
struct TorusMetric {
  std::function<double(double, double)> A, B;
  std::function<double(double, double)> h11, h12, h22;
  double R0 = 0, R1 = 1, T0 = 0, T1 = 1;
  double lambda = 0;  // expected Einstein constant
};

/// Max residual of the two Einstein equations (fiber block and base block)
/// over the interior k x k grid; derivatives by 4th-order central
/// differences at step extent/(4k) with one Richardson refinement.
double torus_einstein_residual(const TorusMetric& tm, int grid);

/// Metric in isothermal form: g = Omega^2(du^2 + dv^2) + h with
/// h = rho K, det K = 1.
struct IsothermalMetric {
  std::function<double(double, double)> Omega, rho, K11, K12, K22;
  double U0 = 0, U1 = 1, V0 = 0, V1 = 1;
};

/// Max |dbar(rho Q)| over the interior grid, where Q collects the trace-free
/// base equation; rho Q is holomorphic when the other Einstein equations
/// hold, and Q = 0 pointwise for an Einstein metric.
double rhoQ_holomorphicity(const IsothermalMetric& im, int grid);

enum class RectSide { RMin, RMax, TMin, TMax };

/// kappa^2 samples along a bolt of the Killing field m dphi + n dpsi,
/// computed from the Laplacian of q = m^2 h11 + 2mn h12 + n^2 h22 at inward
/// offsets with Richardson extrapolation to the side; kappa^2 = Delta q / 4.
struct SurfaceGravityReport {
  std::vector<double> kappa2;
  double max_deviation = 0;  // constancy along the bolt
};

SurfaceGravityReport surface_gravity(const TorusMetric& tm, long long m, long long n,
                                     RectSide side, int samples = 9);

/// Bolt-area identity for diagonal metrics: both 2 pi sum Area(A_i) and
/// 2 pi sum Area(B_i) must equal lambda Vol(M).
struct BoltAreaReport {
  double two_pi_area_A = 0;
  double two_pi_area_B = 0;
  double lambda_vol = 0;
  double rel_error = 0;
};

BoltAreaReport bolt_area_identity(const TorusMetric& tm, int grid = 2048);

/// Catalog: "s4" (lambda 3), "cp2" (lambda 6), "s2xs2" (lambda 1),
/// "page" (lambda left at 0; derive it from the trace equation).
TorusMetric metric_catalog(const std::string& name);

/// The Page profile parameter: root of 4 nu (3 + nu^2) = 3 + 6 nu^2 - nu^4
/// in (0, 1), bisected to 1e-14.
double page_nu();

/// S^4 in isothermal coordinates (u = log tan(R/2)); optional multiplicative
/// perturbation of rho for negative tests.
IsothermalMetric s4_isothermal(double rho_perturbation = 0.0);

/// Derive the Einstein constant from the trace of the fiber-block equation
/// at one interior point.
double derive_lambda(const TorusMetric& tm, double R, double T);

}  // namespace tclab
