#include "tclab/curvature.hpp"

#include <cmath>
#include <stdexcept>

namespace tclab {

Rational abreu_scalar(const MetricPoint& mp) {
  Rational s(0);
  for (size_t i = 0; i < mp.n; ++i)
    for (size_t j = 0; j < mp.n; ++j) s += mp.d2h[i][j](i, j);
  return -s;
}

Rational abreu_scalar_simplified(const MetricPoint& mp) {
  Rational s(0);
  for (size_t i = 0; i < mp.n; ++i)
    for (size_t j = 0; j < mp.n; ++j) s += mp.h(i, j) * mp.d2_det_h(i, j);
  return -s / mp.det_h;
}

RatVec adjugate_divergence(const MetricPoint& mp) {
  // M = D h with D = det(h^{-1}) = 1/det h; dD_p = -(d_p det h) D^2.
  RatVec out(mp.n, Rational(0));
  for (size_t j = 0; j < mp.n; ++j) {
    Rational acc(0);
    for (size_t i = 0; i < mp.n; ++i) {
      Rational dD_i = -mp.d_det_h[i] * mp.D * mp.D;
      acc += dD_i * mp.h(i, j) + mp.D * mp.dh[i](i, j);
    }
    out[j] = acc;
  }
  return out;
}

std::pair<Rational, Rational> laplacians(const MetricPoint& mp, const FnJet& f) {
  Rational second(0), first_full(0), first_quot(0);
  for (size_t i = 0; i < mp.n; ++i)
    for (size_t j = 0; j < mp.n; ++j) {
      second += mp.h(i, j) * f.hess(i, j);
      first_full += mp.h(i, j) * mp.d_det_h[i] * f.grad[j];
      first_quot += mp.h(i, j) * mp.d_det_h[j] * f.grad[i];
    }
  Rational lap = second + first_full / mp.det_h;
  Rational quot = second + first_quot / (2 * mp.det_h);
  return {lap, quot};
}

ExtremalFitResult extremal_fit(const Potential& pot, const std::vector<RatVec>& points) {
  const size_t n = pot.dim();
  if (points.size() < n + 1) throw std::invalid_argument("need at least n+1 sample points");
  // Normal equations for S ~ <alpha, x> + beta over the samples.
  Mat<Rational> ata(n + 1, n + 1);
  std::vector<Rational> atb(n + 1, Rational(0));
  std::vector<Rational> values;
  for (const auto& x : points) {
    Rational s = abreu_scalar(pot, x);
    values.push_back(s);
    std::vector<Rational> row(n + 1);
    for (size_t i = 0; i < n; ++i) row[i] = x[i];
    row[n] = 1;
    for (size_t i = 0; i <= n; ++i) {
      for (size_t j = 0; j <= n; ++j) ata(i, j) += row[i] * row[j];
      atb[i] += row[i] * s;
    }
  }
  std::vector<Rational> coef;
  try {
    coef = ata.solve(atb);
  } catch (const std::domain_error&) {
    throw std::domain_error("degenerate sample configuration");
  }
  ExtremalFitResult fit;
  fit.alpha.assign(coef.begin(), coef.begin() + n);
  fit.beta = coef[n];
  fit.max_residual = 0;
  for (size_t k = 0; k < points.size(); ++k) {
    Rational pred = fit.beta;
    for (size_t i = 0; i < n; ++i) pred += fit.alpha[i] * points[k][i];
    Rational r = abs(values[k] - pred);
    if (r > fit.max_residual) fit.max_residual = r;
  }
  return fit;
}

Mat<Rational> einstein_residual(const MetricPoint& mp, const Rational& lambda) {
  const size_t n = mp.n;
  // M = D h; dM_p = dD_p h + D dh_p with dD_p = -(det h)_p D^2.
  std::vector<Mat<Rational>> dM(n, Mat<Rational>(n, n));
  Mat<Rational> M = mp.D * mp.h;
  for (size_t p = 0; p < n; ++p) {
    Rational dD = -mp.d_det_h[p] * mp.D * mp.D;
    dM[p] = dD * mp.h + mp.D * mp.dh[p];
  }
  // inner_j^{(l)} = M_lj (det h)_l summed over l; d_k inner_j needs both.
  Mat<Rational> res(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Rational acc(0);
      for (size_t k = 0; k < n; ++k) {
        Rational d_inner(0);
        for (size_t l = 0; l < n; ++l)
          d_inner += dM[k](l, j) * mp.d_det_h[l] + M(l, j) * mp.d2_det_h(l, k);
        acc += M(i, k) * d_inner;
      }
      res(i, j) = acc + 2 * lambda * M(i, j);
    }
  return res;
}

namespace {

void check_weights(const MetricPoint& mp, const FiberWeight& w) {
  for (const auto& entry : w) {
    if (entry.d < 2 || entry.d % 2 != 0)
      throw std::invalid_argument("fiber dimensions must be even and >= 2");
    if (entry.b_vec.size() != mp.n) throw std::invalid_argument("fiber weight arity mismatch");
    if (entry.A(mp.x) <= 0) throw std::domain_error("A_j <= 0 at the evaluation point");
  }
}

}  // namespace

Rational fkt_scalar(const MetricPoint& mp, const FiberWeight& w) {
  check_weights(mp, w);
  const size_t n = mp.n;
  Rational s = abreu_scalar_simplified(mp);
  for (const auto& entry : w) {
    Rational A = entry.A(mp.x);
    Rational grad_coupling(0), bb(0);
    for (size_t k = 0; k < n; ++k)
      for (size_t l = 0; l < n; ++l) {
        grad_coupling += mp.h(k, l) * mp.d_det_h[k] * entry.b_vec[l];
        bb += mp.h(k, l) * entry.b_vec[k] * entry.b_vec[l];
      }
    s += -Rational(entry.d) * grad_coupling / (mp.det_h * A) +
         Rational(entry.d) * bb / (2 * A * A) + Rational(entry.d) / A;
  }
  for (const auto& er : w)
    for (const auto& es : w) {
      Rational cross(0);
      for (size_t k = 0; k < n; ++k)
        for (size_t l = 0; l < n; ++l) cross += mp.h(k, l) * er.b_vec[k] * es.b_vec[l];
      s += -Rational(er.d) * Rational(es.d) * cross / (4 * er.A(mp.x) * es.A(mp.x));
    }
  return s;
}

std::pair<Mat<Rational>, RatVec> fkt_einstein_residual(const MetricPoint& mp, const FiberWeight& w,
                                                       const Rational& lambda) {
  check_weights(mp, w);
  const size_t n = mp.n;
  // L_l = d_l log(det h V^{1/2}) = (det h)_l / det h + (1/2) sum_r d_r b_lr / A_r
  RatVec L(n, Rational(0));
  Mat<Rational> dL(n, n);  // dL(k, l) = d_k L_l
  for (size_t l = 0; l < n; ++l) {
    L[l] = mp.d_det_h[l] / mp.det_h;
    for (const auto& entry : w)
      L[l] += Rational(entry.d) * entry.b_vec[l] / (2 * entry.A(mp.x));
  }
  for (size_t k = 0; k < n; ++k)
    for (size_t l = 0; l < n; ++l) {
      Rational v = mp.d2_det_h(k, l) / mp.det_h -
                   mp.d_det_h[l] * mp.d_det_h[k] / (mp.det_h * mp.det_h);
      for (const auto& entry : w) {
        Rational A = entry.A(mp.x);
        v -= Rational(entry.d) * entry.b_vec[l] * entry.b_vec[k] / (2 * A * A);
      }
      dL(k, l) = v;
    }

  Mat<Rational> resA(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Rational acc(0);
      for (size_t k = 0; k < n; ++k) {
        Rational d_inner(0);
        for (size_t l = 0; l < n; ++l)
          d_inner += mp.dh[k](l, j) * L[l] + mp.h(l, j) * dL(k, l);
        acc += mp.h(i, k) * d_inner;
      }
      resA(i, j) = acc + 2 * lambda * mp.h(i, j);
    }

  RatVec resB(w.size(), Rational(0));
  for (size_t r = 0; r < w.size(); ++r) {
    Rational acc(0);
    for (size_t k = 0; k < n; ++k) {
      Rational hk(0);
      for (size_t l = 0; l < n; ++l) hk += mp.h(k, l) * L[l];
      acc += (hk + 2 * lambda * mp.x[k]) * w[r].b_vec[k];
    }
    resB[r] = acc - 2 * (1 - lambda * w[r].a);
  }
  return {resA, resB};
}

DerdzinskiReport derdzinski_check(const Potential& pot, const RatVec& alpha, const Rational& beta,
                                  const std::vector<RatVec>& points) {
  if (pot.dim() != 2) throw std::invalid_argument("derdzinski_check requires n = 2");
  DerdzinskiReport report;
  for (const auto& x : points) {
    MetricPoint mp = metric_at(pot, x);
    Rational S = beta;
    for (size_t i = 0; i < 2; ++i) S += alpha[i] * x[i];
    Rational lapS(0), gradS2(0);
    for (size_t i = 0; i < 2; ++i)
      for (size_t j = 0; j < 2; ++j) {
        lapS += mp.h(i, j) * mp.d_det_h[i] * alpha[j];
        gradS2 += mp.h(i, j) * alpha[i] * alpha[j];
      }
    lapS = lapS / mp.det_h;
    report.values.push_back(S * S * S + 6 * S * lapS - 12 * gradS2);
  }
  report.is_constant = true;
  for (const auto& v : report.values)
    if (v != report.values.front()) report.is_constant = false;
  return report;
}

Mat<Rational> hermitian_einstein_toric_residual(const MetricPoint& mp, const RatVec& alpha,
                                                const Rational& beta, const Rational& lambda) {
  if (mp.n != 2) throw std::invalid_argument("hermitian_einstein_toric_residual requires n = 2");
  Rational S = beta;
  for (size_t i = 0; i < 2; ++i) S += alpha[i] * mp.x[i];
  if (S == 0) throw std::domain_error("singular locus: S(x) = 0");

  const size_t n = 2;
  // d_l log det h and its k-derivative.
  RatVec dlog(n);
  Mat<Rational> d2log(n, n);
  for (size_t l = 0; l < n; ++l) dlog[l] = mp.d_det_h[l] / mp.det_h;
  for (size_t k = 0; k < n; ++k)
    for (size_t l = 0; l < n; ++l)
      d2log(k, l) = mp.d2_det_h(k, l) / mp.det_h -
                    mp.d_det_h[l] * mp.d_det_h[k] / (mp.det_h * mp.det_h);

  Mat<Rational> res(n, n);
  Rational scalar_term(0);
  {
    Rational t1(0), t2(0);
    for (size_t k = 0; k < n; ++k)
      for (size_t l = 0; l < n; ++l) {
        t1 += mp.h(k, l) * dlog[k] * alpha[l];
        t2 += mp.h(k, l) * alpha[k] * alpha[l];
      }
    scalar_term = t1 / S - 3 * t2 / (S * S);
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Rational ricci(0);  // -1/2 h_ik d_k (h_lj d_l log det h)
      for (size_t k = 0; k < n; ++k) {
        Rational d_inner(0);
        for (size_t l = 0; l < n; ++l)
          d_inner += mp.dh[k](l, j) * dlog[l] + mp.h(l, j) * d2log(k, l);
        ricci += mp.h(i, k) * d_inner;
      }
      ricci = -ricci / 2;
      Rational hessS(0);  // (1/S) h_ik (d_k h_lj) alpha_l
      for (size_t k = 0; k < n; ++k)
        for (size_t l = 0; l < n; ++l) hessS += mp.h(i, k) * mp.dh[k](l, j) * alpha[l];
      hessS = hessS / S;
      res(i, j) = ricci + hessS + scalar_term * mp.h(i, j) - lambda / (S * S) * mp.h(i, j);
    }
  return res;
}

IntegratedEinsteinReport integrated_einstein_check(const Potential& pot, const FiberWeight& w,
                                                   double lambda, const std::vector<double>& C,
                                                   const std::vector<RatVec>& points) {
  IntegratedEinsteinReport report;
  for (const auto& x : points) {
    MetricPoint mp = metric_at(pot, x);
    double log_part = std::log(to_double(mp.det_h));
    for (const auto& entry : w) log_part += 0.5 * entry.d * std::log(to_double(entry.A(x)));
    std::vector<double> xd;
    for (const auto& q : x) xd.push_back(to_double(q));
    double phi = pot.phi_value(xd);
    auto grad = pot.phi_grad(xd);
    double linear = 0;
    for (size_t j = 0; j < grad.size(); ++j)
      linear += (-2 * lambda * xd[j] + (j < C.size() ? C[j] : 0.0)) * grad[j];
    report.values.push_back(log_part - linear - 2 * lambda * phi);
  }
  double lo = report.values[0], hi = report.values[0];
  for (double v : report.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  report.max_deviation = hi - lo;
  return report;
}

Rational abreu_scalar(const Potential& pot, const RatVec& x) { return abreu_scalar(metric_at(pot, x)); }
Rational abreu_scalar_simplified(const Potential& pot, const RatVec& x) {
  return abreu_scalar_simplified(metric_at(pot, x));
}
RatVec adjugate_divergence(const Potential& pot, const RatVec& x) {
  return adjugate_divergence(metric_at(pot, x));
}

}  // namespace tclab
