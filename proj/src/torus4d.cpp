#include "tclab/torus4d.hpp"

#include "tclab/parallel.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tclab {

OrbitInvariants orbit_invariants(const OrbitData& data) {
  const auto k = data.pairs.size();
  if (k < 2) throw std::invalid_argument("need at least two integer pairs");
  // Normalize signs: m >= 0, and n > 0 when m = 0.
  std::vector<std::pair<long long, long long>> p = data.pairs;
  for (auto& [m, n] : p) {
    if (m < 0 || (m == 0 && n < 0)) {
      m = -m;
      n = -n;
    }
    if (std::gcd(std::abs(m), std::abs(n)) != 1)
      throw std::invalid_argument("pairs must be coprime");
  }
  auto det = [&](size_t i, size_t j) {
    return p[i].first * p[j].second - p[j].first * p[i].second;
  };
  for (size_t i = 0; i < k; ++i) {
    long long d = det(i, (i + 1) % k);
    if (d != 1 && d != -1)
      throw std::invalid_argument("adjacent pairs must have determinant +-1");
  }

  OrbitInvariants inv;
  inv.chi = static_cast<long long>(k);
  // tau = m1 nk - mk n1 + sum_{j<k} (m_{j+1} n_j - m_j n_{j+1}).
  inv.tau = det(0, k - 1);
  for (size_t j = 0; j + 1 < k; ++j) inv.tau += det(j + 1, j);
  // Spin iff all the skip-one determinants are even (cyclically).
  inv.spin = true;
  if (k >= 3) {
    for (size_t j = 0; j < k; ++j) {
      long long d = det((j + 2) % k, j);
      if (((d % 2) + 2) % 2 != 0) inv.spin = false;
    }
  }
  inv.hitchin_thorpe_pass = 2 * inv.chi >= 3 * std::abs(inv.tau);
  return inv;
}

// ---------------------------------------------------------------------------
// Difference engine: 4th-order central stencils with one Richardson step.

namespace {

using Fn2 = std::function<double(double, double)>;

double d4_x(const Fn2& f, double x, double y, double s) {
  return (-f(x + 2 * s, y) + 8 * f(x + s, y) - 8 * f(x - s, y) + f(x - 2 * s, y)) / (12 * s);
}
double d4_y(const Fn2& f, double x, double y, double s) {
  return (-f(x, y + 2 * s) + 8 * f(x, y + s) - 8 * f(x, y - s) + f(x, y - 2 * s)) / (12 * s);
}
double d4_xx(const Fn2& f, double x, double y, double s) {
  return (-f(x + 2 * s, y) + 16 * f(x + s, y) - 30 * f(x, y) + 16 * f(x - s, y) -
          f(x - 2 * s, y)) /
         (12 * s * s);
}
double d4_yy(const Fn2& f, double x, double y, double s) {
  return (-f(x, y + 2 * s) + 16 * f(x, y + s) - 30 * f(x, y) + 16 * f(x, y - s) -
          f(x, y - 2 * s)) /
         (12 * s * s);
}
double d4_xy(const Fn2& f, double x, double y, double s) {
  auto g = [&](int a, int b) { return f(x + a * s, y + b * s); };
  return (8 * (g(1, -2) + g(2, -1) + g(-2, 1) + g(-1, 2)) -
          8 * (g(-1, -2) + g(-2, -1) + g(1, 2) + g(2, 1)) - (g(2, -2) + g(-2, 2)) +
          (g(-2, -2) + g(2, 2)) + 64 * (g(-1, -1) + g(1, 1)) - 64 * (g(1, -1) + g(-1, 1))) /
         (144 * s * s);
}

double richardson4(double coarse, double fine) { return (16 * fine - coarse) / 15; }

struct Jet2 {
  double v, x, y, xx, yy, xy;
};

Jet2 jet_of(const Fn2& f, double x, double y, double s) {
  Jet2 j;
  j.v = f(x, y);
  j.x = richardson4(d4_x(f, x, y, s), d4_x(f, x, y, s / 2));
  j.y = richardson4(d4_y(f, x, y, s), d4_y(f, x, y, s / 2));
  j.xx = richardson4(d4_xx(f, x, y, s), d4_xx(f, x, y, s / 2));
  j.yy = richardson4(d4_yy(f, x, y, s), d4_yy(f, x, y, s / 2));
  j.xy = richardson4(d4_xy(f, x, y, s), d4_xy(f, x, y, s / 2));
  return j;
}

}  // namespace

namespace {

// All differencing happens on the smooth closures A, B, h_ij only; the
// inverse block, determinant, and their derivatives are assembled
// analytically (d(h^{-1}) = -h^{-1} (dh) h^{-1}), which keeps the engine
// accurate up to the degenerate boundary.
struct PointData {
  Jet2 A, B, h11, h12, h22;
  double hi[2][2];          // inverse fiber block
  double dhi[2][2][2];      // dhi[a][i][j] = d_a h^{ij}
  double det, ddet[2];      // det h and d_a det
  double h(int i, int j) const { return i + j == 0 ? h11.v : (i + j == 1 ? h12.v : h22.v); }
  const Jet2& hj(int i, int j) const { return i + j == 0 ? h11 : (i + j == 1 ? h12 : h22); }
};

PointData point_data(const TorusMetric& tm, double R, double T, double step) {
  PointData p;
  p.A = jet_of(tm.A, R, T, step);
  p.B = jet_of(tm.B, R, T, step);
  p.h11 = jet_of(tm.h11, R, T, step);
  p.h12 = jet_of(tm.h12, R, T, step);
  p.h22 = jet_of(tm.h22, R, T, step);
  p.det = p.h11.v * p.h22.v - p.h12.v * p.h12.v;
  p.hi[0][0] = p.h22.v / p.det;
  p.hi[0][1] = p.hi[1][0] = -p.h12.v / p.det;
  p.hi[1][1] = p.h11.v / p.det;
  for (int a = 0; a < 2; ++a) {
    double dh[2][2] = {{a == 0 ? p.h11.x : p.h11.y, a == 0 ? p.h12.x : p.h12.y},
                       {a == 0 ? p.h12.x : p.h12.y, a == 0 ? p.h22.x : p.h22.y}};
    p.ddet[a] = dh[0][0] * p.h22.v + p.h11.v * dh[1][1] - 2 * p.h12.v * dh[0][1];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double acc = 0;
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) acc += p.hi[i][k] * dh[k][l] * p.hi[l][j];
        p.dhi[a][i][j] = -acc;
      }
  }
  return p;
}

}  // namespace

double torus_einstein_residual(const TorusMetric& tm, int grid) {
  if (grid < 2) throw std::invalid_argument("grid must be >= 2");
  const double lenR = tm.R1 - tm.R0, lenT = tm.T1 - tm.T0;
  const double step = std::min(lenR, lenT) / (4.0 * grid);

  std::vector<double> row_worst(grid, 0.0);
  parallel_for(grid, [&](size_t row) {
    int gi = static_cast<int>(row) + 1;
    double R = tm.R0 + lenR * gi / (grid + 1.0);
    double worst = 0;
    for (int gj = 1; gj <= grid; ++gj) {
      double T = tm.T0 + lenT * gj / (grid + 1.0);
      PointData p = point_data(tm, R, T, step);
      const Jet2 &A = p.A, &B = p.B;

      auto dot = [&](double fx, double fy, double gx, double gy) {
        return fx * gx / A.v + fy * gy / B.v;
      };
      auto laplace = [&](const Jet2& f) {
        double cR = -A.x / (2 * A.v * A.v) + B.x / (2 * A.v * B.v);
        double cT = -B.y / (2 * B.v * B.v) + A.y / (2 * A.v * B.v);
        return f.xx / A.v + f.yy / B.v + f.x * cR + f.y * cT;
      };
      double W = std::sqrt(A.v * B.v);
      double WR = 0.5 * W * (A.x / A.v + B.x / B.v);
      double WT = 0.5 * W * (A.y / A.v + B.y / B.v);
      double K = -(1 / (2 * W)) * ((B.xx / W - B.x * WR / (W * W)) +
                                   (A.yy / W - A.y * WT / (W * W)));
      double scheck = 2 * K;

      // Fiber block: -1/2 lap h_ij - 1/4 <grad det, grad h_ij>/det
      //              - 1/2 h_ik <grad h^{kl}, grad h_lj> = lambda h_ij.
      for (int r = 0; r < 2; ++r)
        for (int c = r; c < 2; ++c) {
          const Jet2& hij = p.hj(r, c);
          double term = -0.5 * laplace(hij) -
                        0.25 * dot(p.ddet[0], p.ddet[1], hij.x, hij.y) / p.det;
          for (int k = 0; k < 2; ++k)
            for (int l = 0; l < 2; ++l)
              term -= 0.5 * p.h(r, k) *
                      dot(p.dhi[0][k][l], p.dhi[1][k][l], p.hj(l, c).x, p.hj(l, c).y);
          worst = std::max(worst, std::abs(term - tm.lambda * hij.v));
        }

      // Base block: -1/2 h^{ij} Hess_ab h_ij - 1/4 d_a h^{ij} d_b h_ij
      //             = (lambda - scheck/2) g_ab.
      double gam_R_RR = A.x / (2 * A.v), gam_R_RT = A.y / (2 * A.v), gam_R_TT = -B.x / (2 * A.v);
      double gam_T_TT = B.y / (2 * B.v), gam_T_RT = B.x / (2 * B.v), gam_T_RR = -A.y / (2 * B.v);
      auto hess = [&](const Jet2& f, int a, int b) {
        if (a == 0 && b == 0) return f.xx - gam_R_RR * f.x - gam_T_RR * f.y;
        if (a == 1 && b == 1) return f.yy - gam_R_TT * f.x - gam_T_TT * f.y;
        return f.xy - gam_R_RT * f.x - gam_T_RT * f.y;
      };
      for (auto [a, b] : {std::pair{0, 0}, std::pair{0, 1}, std::pair{1, 1}}) {
        double lhs = 0;
        for (int r = 0; r < 2; ++r)
          for (int c = 0; c < 2; ++c) {
            const Jet2& hj = p.hj(r, c);
            double db_h = b == 0 ? hj.x : hj.y;
            lhs += -0.5 * p.hi[r][c] * hess(hj, a, b) - 0.25 * p.dhi[a][r][c] * db_h;
          }
        double gab = (a == b) ? (a == 0 ? A.v : B.v) : 0.0;
        worst = std::max(worst, std::abs(lhs - (tm.lambda - 0.5 * scheck) * gab));
      }
    }
    row_worst[row] = worst;
  });
  double worst = 0;
  for (double w : row_worst) worst = std::max(worst, w);
  return worst;
}

double rhoQ_holomorphicity(const IsothermalMetric& im, int grid) {
  using C = std::complex<double>;
  const double lenU = im.U1 - im.U0, lenV = im.V1 - im.V0;
  const double step = std::min(lenU, lenV) / (8.0 * grid);

  // rho Q at a point, all inner derivatives via the difference engine.
  auto rhoQ = [&](double u, double v) -> C {
    Jet2 rho = jet_of(im.rho, u, v, step);
    Jet2 logOmega = jet_of([&](double a, double b) { return std::log(im.Omega(a, b)); }, u, v, step);
    Jet2 k11 = jet_of(im.K11, u, v, step), k12 = jet_of(im.K12, u, v, step),
         k22 = jet_of(im.K22, u, v, step);
    const C I(0, 1);
    auto del = [&](const Jet2& f) { return 0.5 * (f.x - I * f.y); };
    // del del rho = (1/4)(rho_uu - rho_vv - 2 i rho_uv)
    C deldel_rho = 0.25 * (rho.xx - rho.yy - 2.0 * I * rho.xy);
    // K^{-1} del K with det K = 1: K^{-1} = [[k22, -k12], [-k12, k11]].
    C dk11 = del(k11), dk12 = del(k12), dk22 = del(k22);
    C m11 = k22.v * dk11 - k12.v * dk12;
    C m12 = k22.v * dk12 - k12.v * dk22;
    C m21 = -k12.v * dk11 + k11.v * dk12;
    C m22 = -k12.v * dk12 + k11.v * dk22;
    C tr = m11 * m11 + m12 * m21 + m21 * m12 + m22 * m22;
    C q = 8.0 * del(logOmega) * del(rho) / rho.v - 4.0 * deldel_rho / rho.v +
          2.0 * del(rho) * del(rho) / (rho.v * rho.v) - tr;
    return rho.v * q;
  };

  double worst = 0;
  const double douter = std::min(lenU, lenV) / (8.0 * grid);
  for (int i = 1; i <= grid; ++i) {
    double u = im.U0 + lenU * i / (grid + 1.0);
    for (int j = 1; j <= grid; ++j) {
      double v = im.V0 + lenV * j / (grid + 1.0);
      // dbar = (1/2)(d_u + i d_v) of rho Q, 4th order plus Richardson.
      auto real_part = [&](double a, double b) { return rhoQ(a, b).real(); };
      auto imag_part = [&](double a, double b) { return rhoQ(a, b).imag(); };
      double rx = richardson4(d4_x(real_part, u, v, douter), d4_x(real_part, u, v, douter / 2));
      double ry = richardson4(d4_y(real_part, u, v, douter), d4_y(real_part, u, v, douter / 2));
      double ix = richardson4(d4_x(imag_part, u, v, douter), d4_x(imag_part, u, v, douter / 2));
      double iy = richardson4(d4_y(imag_part, u, v, douter), d4_y(imag_part, u, v, douter / 2));
      std::complex<double> dbar = 0.5 * (std::complex<double>(rx, ix) +
                                         std::complex<double>(0, 1) * std::complex<double>(ry, iy));
      worst = std::max(worst, std::abs(dbar));
    }
  }
  return worst;
}

SurfaceGravityReport surface_gravity(const TorusMetric& tm, long long m, long long n,
                                     RectSide side, int samples) {
  const double lenR = tm.R1 - tm.R0, lenT = tm.T1 - tm.T0;
  auto site = [&](double along, double eps) -> std::pair<double, double> {
    switch (side) {
      case RectSide::RMin: return {tm.R0 + eps, tm.T0 + along * lenT};
      case RectSide::RMax: return {tm.R1 - eps, tm.T0 + along * lenT};
      case RectSide::TMin: return {tm.R0 + along * lenR, tm.T0 + eps};
      default: return {tm.R0 + along * lenR, tm.T1 - eps};
    }
  };
  auto qval = [&](double r, double t) {
    return m * m * tm.h11(r, t) + 2.0 * m * n * tm.h12(r, t) + n * n * tm.h22(r, t);
  };

  // Degeneracy: q must vanish along the side but not in the interior.
  double qmax = 0, interior = 0;
  for (int i = 1; i < 16; ++i) {
    auto [r, t] = site(i / 16.0, 0.0);
    qmax = std::max(qmax, std::abs(qval(r, t)));
    auto [ri, ti] = site(i / 16.0, 0.3 * std::min(lenR, lenT));
    interior = std::max(interior, std::abs(qval(ri, ti)));
  }
  if (qmax > 1e-8 * std::max(1.0, interior))
    throw std::domain_error("side is not degenerate for this Killing field");

  const double step = std::min(lenR, lenT) / 512.0;
  SurfaceGravityReport report;
  const double eps0 = 0.004 * std::min(lenR, lenT);
  for (int i = 1; i <= samples; ++i) {
    double along = i / (samples + 1.0);
    // Full Laplacian of q = m^2 h11 + 2mn h12 + n^2 h22 at inward offsets:
    // Delta q = lap_base q + <grad det/(2 det), grad q>; extrapolate to the
    // side through three offsets (the FD step is independent of eps because
    // only the smooth h_ij are differenced).
    auto lap_at = [&](double eps) {
      auto [r, t] = site(along, eps);
      PointData p = point_data(tm, r, t, step);
      const Jet2 &A = p.A, &B = p.B;
      double qx = m * m * p.h11.x + 2.0 * m * n * p.h12.x + n * n * p.h22.x;
      double qy = m * m * p.h11.y + 2.0 * m * n * p.h12.y + n * n * p.h22.y;
      double qxx = m * m * p.h11.xx + 2.0 * m * n * p.h12.xx + n * n * p.h22.xx;
      double qyy = m * m * p.h11.yy + 2.0 * m * n * p.h12.yy + n * n * p.h22.yy;
      double cR = -A.x / (2 * A.v * A.v) + B.x / (2 * A.v * B.v);
      double cT = -B.y / (2 * B.v * B.v) + A.y / (2 * A.v * B.v);
      double lap_base = qxx / A.v + qyy / B.v + qx * cR + qy * cT;
      return lap_base + (p.ddet[0] * qx / A.v + p.ddet[1] * qy / B.v) / (2 * p.det);
    };
    double l1 = lap_at(eps0), l2 = lap_at(eps0 / 2), l3 = lap_at(eps0 / 4);
    double value = (l1 / 3.0) - 2.0 * l2 + (8.0 / 3.0) * l3;
    report.kappa2.push_back(value / 4.0);
  }
  double lo = report.kappa2[0], hi = report.kappa2[0];
  for (double v : report.kappa2) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  report.max_deviation = hi - lo;
  return report;
}

BoltAreaReport bolt_area_identity(const TorusMetric& tm, int grid) {
  const double lenR = tm.R1 - tm.R0, lenT = tm.T1 - tm.T0;
  // Diagonality check.
  for (int i = 1; i < 8; ++i)
    for (int j = 1; j < 8; ++j) {
      double r = tm.R0 + lenR * i / 8.0, t = tm.T0 + lenT * j / 8.0;
      if (std::abs(tm.h12(r, t)) > 1e-12 * (std::abs(tm.h11(r, t)) + std::abs(tm.h22(r, t))))
        throw std::invalid_argument("bolt_area_identity requires a diagonal fiber block");
    }
  auto f1 = [&](double r, double t) { return std::sqrt(std::max(0.0, tm.h11(r, t))); };
  auto f2 = [&](double r, double t) { return std::sqrt(std::max(0.0, tm.h22(r, t))); };

  auto simpson = [&](const std::function<double(double)>& g, double a, double b) {
    int n = grid;
    double h = (b - a) / n, acc = g(a) + g(b);
    for (int i = 1; i < n; ++i) acc += g(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
  };

  BoltAreaReport report;
  for (RectSide side : {RectSide::RMin, RectSide::RMax, RectSide::TMin, RectSide::TMax}) {
    bool along_T = (side == RectSide::RMin || side == RectSide::RMax);
    double fixed = side == RectSide::RMin   ? tm.R0
                   : side == RectSide::RMax ? tm.R1
                   : side == RectSide::TMin ? tm.T0
                                            : tm.T1;
    auto eval = [&](const Fn2& f, double along) {
      return along_T ? f(fixed, tm.T0 + along * lenT) : f(tm.R0 + along * lenR, fixed);
    };
    double max1 = 0, max2 = 0;
    for (int i = 0; i <= 16; ++i) {
      max1 = std::max(max1, std::abs(eval(tm.h11, i / 16.0)));
      max2 = std::max(max2, std::abs(eval(tm.h22, i / 16.0)));
    }
    bool f1_vanishes = max1 < 1e-12, f2_vanishes = max2 < 1e-12;
    if (f1_vanishes == f2_vanishes) continue;  // vertex edge or not a bolt
    // Arc length element along the side.
    auto dl = [&](double along) {
      if (along_T) return std::sqrt(tm.B(fixed, tm.T0 + along * lenT)) * lenT;
      return std::sqrt(tm.A(tm.R0 + along * lenR, fixed)) * lenR;
    };
    if (f1_vanishes) {
      double area =
          2 * M_PI * simpson([&](double s) { return eval(tm.h22, s) <= 0
                                                     ? 0.0
                                                     : std::sqrt(eval(tm.h22, s)) * dl(s); },
                             0.0, 1.0);
      report.two_pi_area_A += 2 * M_PI * area;
    } else {
      double area =
          2 * M_PI * simpson([&](double s) { return eval(tm.h11, s) <= 0
                                                     ? 0.0
                                                     : std::sqrt(eval(tm.h11, s)) * dl(s); },
                             0.0, 1.0);
      report.two_pi_area_B += 2 * M_PI * area;
    }
  }
  // Volume: (2 pi)^2 integral of f1 f2 sqrt(A B).
  auto inner = [&](double r) {
    return simpson(
        [&](double t) {
          double tt = tm.T0 + t * lenT;
          return f1(r, tt) * f2(r, tt) * std::sqrt(tm.A(r, tt) * tm.B(r, tt));
        },
        0.0, 1.0) * lenT;
  };
  double vol = 4 * M_PI * M_PI *
               simpson([&](double s) { return inner(tm.R0 + s * lenR); }, 0.0, 1.0) * lenR;
  report.lambda_vol = tm.lambda * vol;

  double a = report.two_pi_area_A, b = report.two_pi_area_B, c = report.lambda_vol;
  double scale = std::max({std::abs(a), std::abs(b), std::abs(c), 1e-300});
  report.rel_error = std::max({std::abs(a - b), std::abs(a - c), std::abs(b - c)}) / scale;
  return report;
}

double page_nu() {
  auto f = [](double nu) {
    return 4 * nu * (3 + nu * nu) - (3 + 6 * nu * nu - nu * nu * nu * nu);
  };
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-14) {
    double mid = 0.5 * (lo + hi);
    if (f(mid) < 0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

TorusMetric metric_catalog(const std::string& name) {
  TorusMetric tm;
  auto sq = [](double x) { return x * x; };
  if (name == "s4") {
    tm.A = [](double, double) { return 1.0; };
    tm.B = [sq](double R, double) { return sq(std::sin(R)); };
    tm.h11 = [sq](double R, double T) { return sq(std::sin(R)) * sq(std::sin(T)); };
    tm.h12 = [](double, double) { return 0.0; };
    tm.h22 = [sq](double R, double T) { return sq(std::sin(R)) * sq(std::cos(T)); };
    tm.R0 = 0;
    tm.R1 = M_PI;
    tm.T0 = 0;
    tm.T1 = M_PI / 2;
    tm.lambda = 3;
    return tm;
  }
  if (name == "cp2") {
    tm.A = [](double, double) { return 1.0; };
    tm.B = [sq](double R, double) { return sq(std::sin(R)); };
    tm.h11 = [sq](double R, double T) {
      double s = sq(std::sin(R)) * sq(std::sin(T));
      return s * (1 - s);
    };
    tm.h12 = [sq](double R, double T) {
      return -sq(sq(std::sin(R))) * sq(std::sin(T)) * sq(std::cos(T));
    };
    tm.h22 = [sq](double R, double T) {
      double c = sq(std::sin(R)) * sq(std::cos(T));
      return c * (1 - c);
    };
    tm.R0 = 0;
    tm.R1 = M_PI / 2;
    tm.T0 = 0;
    tm.T1 = M_PI / 2;
    tm.lambda = 6;
    return tm;
  }
  if (name == "s2xs2") {
    tm.A = [](double, double) { return 1.0; };
    tm.B = [](double, double) { return 1.0; };
    tm.h11 = [sq](double R, double) { return sq(std::sin(R)); };
    tm.h12 = [](double, double) { return 0.0; };
    tm.h22 = [sq](double, double T) { return sq(std::sin(T)); };
    tm.R0 = 0;
    tm.R1 = M_PI;
    tm.T0 = 0;
    tm.T1 = M_PI;
    tm.lambda = 1;
    return tm;
  }
  if (name == "page") {
    double nu = page_nu();
    double nu2 = nu * nu, nu4 = nu2 * nu2;
    // The braced part of the printed metric (overall scale 3(1+nu^2)/lambda
    // dropped); its Einstein constant is then 3(1 + nu^2), to be *derived*,
    // not assumed: lambda is left 0 here.
    auto U = [=](double R) { return 1 - nu2 * sq(std::cos(R)); };
    auto C = [=](double R) {
      return (3 - nu2 - nu2 * (1 + nu2) * sq(std::cos(R))) * sq(std::sin(R)) /
             (sq(3 + nu2) * U(R));
    };
    double denom = 3 + 6 * nu2 - nu4;
    tm.A = [=](double R, double) { return U(R) / (3 - nu2 - nu2 * (1 + nu2) * sq(std::cos(R))); };
    tm.B = [=](double R, double) { return U(R) / denom; };
    // Killing coordinates (phi, psi): the psi-circle collapses at R = 0, pi;
    // h_phiphi picks up the sin^2(theta/2) mixing from  dpsi - sin^2(theta/2) dphi.
    tm.h11 = [=](double R, double T) {
      double s2half = sq(std::sin(T / 2));
      return U(R) / denom * sq(std::sin(T)) + C(R) * sq(s2half);
    };
    tm.h12 = [=](double R, double T) { return -C(R) * sq(std::sin(T / 2)); };
    tm.h22 = [=](double R, double) { return C(R); };
    tm.R0 = 0;
    tm.R1 = M_PI;
    tm.T0 = 0;
    tm.T1 = M_PI;
    tm.lambda = 0;
    return tm;
  }
  throw std::invalid_argument("unknown torus metric: " + name);
}

IsothermalMetric s4_isothermal(double rho_perturbation) {
  IsothermalMetric im;
  auto R_of_u = [](double u) { return 2 * std::atan(std::exp(u)); };
  im.Omega = [=](double u, double) { return std::sin(R_of_u(u)); };
  im.rho = [=](double u, double v) {
    double s = std::sin(R_of_u(u));
    double base = s * s * std::sin(v) * std::cos(v);
    return base * (1.0 + rho_perturbation * R_of_u(u));
  };
  im.K11 = [](double, double v) { return std::tan(v); };
  im.K12 = [](double, double) { return 0.0; };
  im.K22 = [](double, double v) { return 1.0 / std::tan(v); };
  im.U0 = -1.0;
  im.U1 = 1.0;
  im.V0 = 0.35;
  im.V1 = M_PI / 2 - 0.35;
  return im;
}

double derive_lambda(const TorusMetric& tm, double R, double T) {
  // Trace of the fiber-block equation: sum_ij h^{ij} (...) = 2 lambda.
  const double step = std::min(tm.R1 - tm.R0, tm.T1 - tm.T0) / 512.0;
  PointData p = point_data(tm, R, T, step);
  const Jet2 &A = p.A, &B = p.B;
  auto dot = [&](double fx, double fy, double gx, double gy) {
    return fx * gx / A.v + fy * gy / B.v;
  };
  auto laplace = [&](const Jet2& f) {
    double cR = -A.x / (2 * A.v * A.v) + B.x / (2 * A.v * B.v);
    double cT = -B.y / (2 * B.v * B.v) + A.y / (2 * A.v * B.v);
    return f.xx / A.v + f.yy / B.v + f.x * cR + f.y * cT;
  };
  double acc = 0;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      const Jet2& hij = p.hj(r, c);
      double term = -0.5 * laplace(hij) - 0.25 * dot(p.ddet[0], p.ddet[1], hij.x, hij.y) / p.det;
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          term -= 0.5 * p.h(r, k) *
                  dot(p.dhi[0][k][l], p.dhi[1][k][l], p.hj(l, c).x, p.hj(l, c).y);
      acc += p.hi[r][c] * term;
    }
  return acc / 2.0;
}

}  // namespace tclab
