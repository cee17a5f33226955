#include "tclab/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace tclab {

namespace {

// Multi-indices of total order exactly k in n variables.
void multi_indices(size_t n, unsigned k, std::vector<std::vector<unsigned>>& out) {
  std::vector<unsigned> cur(n, 0);
  std::function<void(size_t, unsigned)> rec = [&](size_t i, unsigned left) {
    if (i + 1 == n) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (unsigned v = 0; v <= left; ++v) {
      cur[i] = v;
      rec(i + 1, left - v);
    }
  };
  if (n > 0) rec(0, k);
}

Rational int_pow(const Rational& base, unsigned e) {
  Rational r(1);
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

Potential::Potential(Polytope polytope) : polytope_(std::move(polytope)) {}

Potential::Potential(Polytope polytope, std::vector<std::vector<MultiRatFunc>> correction_hessian,
                     std::optional<NumericClosure> closure)
    : polytope_(std::move(polytope)),
      correction_(std::move(correction_hessian)),
      closure_(std::move(closure)) {
  size_t n = polytope_.dim();
  if (correction_.size() != n) throw std::invalid_argument("correction Hessian must be n x n");
  for (size_t i = 0; i < n; ++i) {
    if (correction_[i].size() != n) throw std::invalid_argument("correction Hessian must be n x n");
    for (size_t j = 0; j < n; ++j)
      if (correction_[i][j].nvars() != n)
        throw std::invalid_argument("correction entry arity mismatch");
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (!correction_[i][j].same_value(correction_[j][i]))
        throw std::invalid_argument("correction Hessian must be symmetric");
}

Rational Potential::correction_entry(size_t k, size_t l, const std::vector<unsigned>& extra,
                                     const RatVec& x) const {
  if (correction_.empty()) return Rational(0);
  auto key = std::make_tuple(k, l, extra);
  auto it = dcache_.find(key);
  if (it == dcache_.end()) {
    MultiRatFunc f = correction_[k][l];
    for (size_t var = 0; var < extra.size(); ++var)
      for (unsigned rep = 0; rep < extra[var]; ++rep) f = f.derivative(var);
    it = dcache_.emplace(key, std::move(f)).first;
  }
  return it->second.eval(x);
}

double Potential::phi_value(const std::vector<double>& x) const {
  double acc = 0;
  for (const auto& f : polytope_.facets()) {
    double l = f.l(x);
    if (l <= 0) throw std::domain_error("phi_value: point not interior");
    acc += 0.5 * l * std::log(l);
  }
  if (closure_ && closure_->value) acc += closure_->value(x);
  else if (!correction_.empty())
    throw std::domain_error("potential has a correction but no numeric closure for Psi");
  return acc;
}

std::vector<double> Potential::phi_grad(const std::vector<double>& x) const {
  std::vector<double> g(polytope_.dim(), 0.0);
  for (const auto& f : polytope_.facets()) {
    double l = f.l(x);
    if (l <= 0) throw std::domain_error("phi_grad: point not interior");
    for (size_t i = 0; i < g.size(); ++i)
      g[i] += 0.5 * static_cast<double>(f.mu[i]) * (std::log(l) + 1.0);
  }
  if (closure_ && closure_->grad) {
    auto cg = closure_->grad(x);
    for (size_t i = 0; i < g.size(); ++i) g[i] += cg[i];
  } else if (!correction_.empty()) {
    throw std::domain_error("potential has a correction but no numeric closure for Psi");
  }
  return g;
}

const Rational& JetTable::fetch(const std::vector<unsigned>& alpha) const {
  auto it = exact.find(alpha);
  if (it == exact.end()) throw std::out_of_range("jet table miss");
  return it->second;
}

JetTable canonical_jets(const Polytope& P, const RatVec& x, int max_order) {
  if (max_order < 2) throw std::invalid_argument("max_order must be >= 2");
  if (!P.strictly_contains(x)) throw std::domain_error("canonical_jets: point not interior");
  JetTable table;
  table.n = P.dim();
  table.max_order = max_order;

  // Order-k derivative of (1/2) l log(l) for affine l: each facet contributes
  // (1/2)(-1)^k (k-2)! mu^alpha / l^{k-1}, k >= 2.
  for (unsigned k = 2; k <= static_cast<unsigned>(max_order); ++k) {
    Rational factor(1, 2);
    if (k % 2 == 1) factor = -factor;
    for (unsigned i = 2; i < k; ++i) factor *= Rational(i - 1);
    std::vector<std::vector<unsigned>> alphas;
    multi_indices(P.dim(), k, alphas);
    for (const auto& alpha : alphas) {
      Rational acc(0);
      for (const auto& f : P.facets()) {
        Rational mu_pow(1);
        for (size_t i = 0; i < alpha.size(); ++i) mu_pow *= int_pow(Rational(f.mu[i]), alpha[i]);
        if (mu_pow == 0) continue;
        acc += factor * mu_pow / int_pow(f.l(x), k - 1);
      }
      table.exact[alpha] = acc;
    }
  }

  std::vector<double> xd;
  for (const auto& q : x) xd.push_back(to_double(q));
  table.value = 0;
  table.grad.assign(P.dim(), 0.0);
  for (const auto& f : P.facets()) {
    double l = f.l(xd);
    table.value += 0.5 * l * std::log(l);
    for (size_t i = 0; i < P.dim(); ++i)
      table.grad[i] += 0.5 * static_cast<double>(f.mu[i]) * (std::log(l) + 1.0);
  }
  return table;
}

MetricPoint metric_at(const Potential& pot, const RatVec& x) {
  const size_t n = pot.dim();
  if (x.size() != n) throw std::invalid_argument("point arity mismatch");
  if (!pot.polytope().strictly_contains(x)) throw std::domain_error("not a metric point: boundary or exterior point");

  JetTable jets = canonical_jets(pot.polytope(), x, 4);
  auto idx = [&](std::initializer_list<size_t> vars) {
    std::vector<unsigned> alpha(n, 0);
    for (size_t v : vars) alpha[v] += 1;
    return alpha;
  };
  auto zero_extra = std::vector<unsigned>(n, 0);

  MetricPoint mp;
  mp.x = x;
  mp.n = n;
  mp.h_inv = Mat<Rational>(n, n);
  for (size_t k = 0; k < n; ++k)
    for (size_t l = 0; l < n; ++l)
      mp.h_inv(k, l) = jets.fetch(idx({k, l})) + pot.correction_entry(k, l, zero_extra, x);

  // Positive definiteness by leading principal minors.
  for (size_t m = 1; m <= n; ++m) {
    Mat<Rational> sub(m, m);
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < m; ++j) sub(i, j) = mp.h_inv(i, j);
    if (sub.det() <= 0) throw std::domain_error("not a metric point: Hessian not positive definite");
  }

  mp.h = mp.h_inv.inverse();
  mp.D = mp.h_inv.det();
  mp.det_h = 1 / mp.D;

  mp.dh_inv.assign(n, Mat<Rational>(n, n));
  mp.d2h_inv.assign(n, std::vector<Mat<Rational>>(n, Mat<Rational>(n, n)));
  for (size_t p = 0; p < n; ++p)
    for (size_t k = 0; k < n; ++k)
      for (size_t l = 0; l < n; ++l) {
        std::vector<unsigned> extra(n, 0);
        extra[p] = 1;
        mp.dh_inv[p](k, l) = jets.fetch(idx({k, l, p})) + pot.correction_entry(k, l, extra, x);
      }
  for (size_t p = 0; p < n; ++p)
    for (size_t q = 0; q < n; ++q)
      for (size_t k = 0; k < n; ++k)
        for (size_t l = 0; l < n; ++l) {
          std::vector<unsigned> extra(n, 0);
          extra[p] += 1;
          extra[q] += 1;
          mp.d2h_inv[p][q](k, l) =
              jets.fetch(idx({k, l, p, q})) + pot.correction_entry(k, l, extra, x);
        }

  // dh = -h (d h^{-1}) h and its derivative.
  mp.dh.assign(n, Mat<Rational>(n, n));
  for (size_t p = 0; p < n; ++p) mp.dh[p] = Rational(-1) * (mp.h * mp.dh_inv[p] * mp.h);
  mp.d2h.assign(n, std::vector<Mat<Rational>>(n, Mat<Rational>(n, n)));
  for (size_t p = 0; p < n; ++p)
    for (size_t q = 0; q < n; ++q) {
      Mat<Rational> term = mp.dh[q] * mp.dh_inv[p] * mp.h + mp.h * mp.d2h_inv[p][q] * mp.h +
                           mp.h * mp.dh_inv[p] * mp.dh[q];
      mp.d2h[p][q] = Rational(-1) * term;
    }

  // Jacobi's formula for det(h_inv) and the chain rule for det h = 1/D.
  auto trace = [&](const Mat<Rational>& m) {
    Rational t(0);
    for (size_t i = 0; i < n; ++i) t += m(i, i);
    return t;
  };
  RatVec dD(n);
  for (size_t p = 0; p < n; ++p) dD[p] = mp.D * trace(mp.h * mp.dh_inv[p]);
  Mat<Rational> d2D(n, n);
  for (size_t p = 0; p < n; ++p)
    for (size_t q = 0; q < n; ++q)
      d2D(p, q) = dD[q] * trace(mp.h * mp.dh_inv[p]) +
                  mp.D * trace(mp.dh[q] * mp.dh_inv[p] + mp.h * mp.d2h_inv[p][q]);

  mp.d_det_h = RatVec(n);
  mp.d2_det_h = Mat<Rational>(n, n);
  for (size_t p = 0; p < n; ++p) mp.d_det_h[p] = -dD[p] / (mp.D * mp.D);
  for (size_t p = 0; p < n; ++p)
    for (size_t q = 0; q < n; ++q)
      mp.d2_det_h(p, q) = (2 * dD[p] * dD[q] / mp.D - d2D(p, q)) / (mp.D * mp.D);
  return mp;
}

BoundaryCheck boundary_determinant_check(const Potential& pot) {
  const auto& P = pot.polytope();
  const size_t n = P.dim();
  const std::vector<Rational> offsets{Rational(1, 100), Rational(1, 1000), Rational(1, 10000)};
  RatVec center = P.interior_point();

  BoundaryCheck check;
  check.pass = true;

  auto delta_at = [&](const RatVec& x) {
    JetTable jets = canonical_jets(P, x, 2);
    Mat<Rational> hinv(n, n);
    std::vector<unsigned> none(n, 0);
    for (size_t k = 0; k < n; ++k)
      for (size_t l = 0; l < n; ++l) {
        std::vector<unsigned> alpha(n, 0);
        alpha[k] += 1;
        alpha[l] += 1;
        hinv(k, l) = jets.fetch(alpha) + pot.correction_entry(k, l, none, x);
      }
    Rational det = hinv.det();
    Rational prod(1);
    for (const auto& f : P.facets()) prod *= f.l(x);
    return to_double(1 / (det * prod));
  };

  auto run_site = [&](RatVec base, RatVec dir, const std::string& kind) {
    // Normalize the inward direction by its largest component so offsets are
    // comparable across sites.
    Rational scale(0);
    for (const auto& d : dir) scale = std::max(scale, abs(d));
    if (scale == 0) return;
    for (auto& d : dir) d /= scale;
    BoundarySite site;
    site.base = base;
    site.kind = kind;
    site.positive = true;
    for (const auto& eps : offsets) {
      RatVec x(n);
      for (size_t i = 0; i < n; ++i) x[i] = base[i] + eps * dir[i];
      if (!P.strictly_contains(x)) {
        site.positive = false;
        site.delta_samples.push_back(std::numeric_limits<double>::quiet_NaN());
        continue;
      }
      double d = delta_at(x);
      site.delta_samples.push_back(d);
      if (!(d > 0)) site.positive = false;
    }
    auto& s = site.delta_samples;
    site.converged = s.size() == 3 && std::isfinite(s[1]) && std::isfinite(s[2]) &&
                     std::abs(s[1] - s[2]) < 0.1 * std::abs(s[2]);
    if (!site.positive || !site.converged) check.pass = false;
    check.sites.push_back(std::move(site));
  };

  for (const auto& f : P.facets()) {
    std::vector<RatVec> on;
    for (const auto& v : P.vertices())
      if (f.l(v) == 0) on.push_back(v);
    if (on.empty()) continue;
    RatVec mid(n, Rational(0));
    for (const auto& v : on)
      for (size_t i = 0; i < n; ++i) mid[i] += v[i];
    for (auto& q : mid) q /= Rational(static_cast<long long>(on.size()));
    RatVec dir(n);
    for (size_t i = 0; i < n; ++i) dir[i] = Rational(f.mu[i]);
    run_site(mid, dir, "facet");
  }
  for (const auto& v : P.vertices()) {
    RatVec dir(n);
    for (size_t i = 0; i < n; ++i) dir[i] = center[i] - v[i];
    run_site(v, dir, "vertex");
  }
  return check;
}

double legendre_x_of_u(const Potential& pot, double u) {
  if (pot.dim() != 1) throw std::invalid_argument("legendre_x_of_u requires n = 1");
  // Bisection on the interval interior: dPhi/dx is strictly increasing.
  double lo = to_double(pot.polytope().vertices().front()[0]);
  double hi = to_double(pot.polytope().vertices().back()[0]);
  double pad = (hi - lo) * 1e-12;
  lo += pad;
  hi -= pad;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double val = pot.phi_grad({mid})[0];
    if (val < u) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

NumericClosure closure_from_fxx(const RatFuncQ& fxx, size_t nvars) {
  // Psi(x) depends on x1 only; integrate the exact f_xx twice from 0 by
  // composite Simpson with Richardson refinement.
  auto f = [fxx](double t) {
    // Evaluate num/den in doubles.
    double num = 0, den = 0;
    double p = 1;
    for (const auto& c : fxx.num().coeffs()) {
      num += to_double(c) * p;
      p *= t;
    }
    p = 1;
    for (const auto& c : fxx.den().coeffs()) {
      den += to_double(c) * p;
      p *= t;
    }
    return num / den;
  };
  auto simpson = [](const std::function<double(double)>& g, double a, double b) {
    int n = 256;
    double h = (b - a) / n, acc = g(a) + g(b);
    for (int i = 1; i < n; ++i) acc += g(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
  };
  // fp(x) = int_0^x fxx, psi(x) = int_0^x fp.
  auto fp = [f, simpson](double x) { return simpson(f, 0.0, x); };
  auto value = [fp, simpson, nvars](const std::vector<double>& x) {
    (void)nvars;
    return simpson(fp, 0.0, x[0]);
  };
  auto grad = [fp, nvars](const std::vector<double>& x) {
    std::vector<double> g(nvars, 0.0);
    g[0] = fp(x[0]);
    return g;
  };
  return NumericClosure{value, grad};
}

namespace {

std::vector<std::vector<MultiRatFunc>> fxx_hessian(const RatFuncQ& fxx, size_t n) {
  // Embed a univariate f_xx(x1) as the (1,1) entry of an n x n Hessian.
  auto lift = [&](const PolyQ& p) {
    MultiPoly out(n);
    MultiPoly xv = MultiPoly::variable(n, 0);
    MultiPoly power = MultiPoly::constant(n, 1);
    for (size_t i = 0; i < p.coeffs().size(); ++i) {
      out = out + p.coeffs()[i] * power;
      power = power * xv;
    }
    return out;
  };
  std::vector<std::vector<MultiRatFunc>> h(n, std::vector<MultiRatFunc>(n, MultiRatFunc(n)));
  h[0][0] = MultiRatFunc(lift(fxx.num()), lift(fxx.den()));
  return h;
}

}  // namespace

Potential potential_catalog(const std::string& name, const std::map<std::string, Rational>& params) {
  auto get = [&](const std::string& key, Rational fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  if (name == "cp1" || name == "cp2" || name == "cp1xcp1" || name == "hexagon" ||
      name == "square" || name == "sakane6") {
    return Potential(polytope_catalog(name));
  }
  if (name == "blowup1-extremal") {
    Rational a = get("a", Rational(1));
    Polytope P = polytope_catalog("blowup1", {{"a", a}});
    // f_xx = (1/2) / (x - a - 1) + a / (a x^2 - (3a^2+6a+2) x + 3a^3+9a^2+7a+2)
    RatFuncQ term1(PolyQ({Rational(1, 2)}), PolyQ({-a - 1, Rational(1)}));
    RatFuncQ term2(PolyQ({a}),
                   PolyQ({3 * a * a * a + 9 * a * a + 7 * a + 2, -(3 * a * a + 6 * a + 2), a}));
    RatFuncQ fxx = term1 + term2;
    return Potential(P, fxx_hessian(fxx, 2), closure_from_fxx(fxx, 2));
  }
  if (name == "sakane6-einstein") {
    Polytope P = polytope_catalog("sakane6");
    RatFuncQ fxx(PolyQ({Rational(-10), Rational(0), Rational(1)}),
                 PolyQ({Rational(-4), Rational(0), Rational(1)}) *
                     PolyQ({Rational(-7), Rational(0), Rational(1)}));
    return Potential(P, fxx_hessian(fxx, 3), closure_from_fxx(fxx, 3));
  }
  throw std::invalid_argument("unknown potential catalog name: " + name);
}

}  // namespace tclab
