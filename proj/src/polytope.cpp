#include "tclab/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace tclab {

namespace {

long long gcd_ll(long long a, long long b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Enumerate k-subsets of {0..m-1}.
void for_each_subset(size_t m, size_t k, const std::function<void(const std::vector<size_t>&)>& fn) {
  std::vector<size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > m) return;
  for (;;) {
    fn(idx);
    size_t i = k;
    while (i-- > 0) {
      if (idx[i] + (k - i) <= m - 1 + 0) {
        ++idx[i];
        for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
      if (i == 0) return;
    }
  }
}

// Kernel direction of the (n-1) x n system of facet normals, if the rank is
// exactly n-1; used for recession-cone ray enumeration.
std::vector<Rational> kernel_direction(const std::vector<const Facet*>& rows, size_t n) {
  Mat<Rational> m(rows.size(), n);
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < n; ++j) m(i, j) = Rational(rows[i]->mu[j]);
  if (m.rank() != n - 1) return {};
  // Solve for a nonzero kernel vector by fixing one coordinate.
  for (size_t fixed = 0; fixed < n; ++fixed) {
    Mat<Rational> a(n, n);
    std::vector<Rational> b(n, Rational(0));
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < n; ++j) a(i, j) = Rational(rows[i]->mu[j]);
    for (size_t j = 0; j < n; ++j) a(n - 1, j) = Rational(j == fixed ? 1 : 0);
    b[n - 1] = 1;
    try {
      return a.solve(b);
    } catch (const std::domain_error&) {
      continue;
    }
  }
  return {};
}

}  // namespace

Polytope::Polytope(size_t dimension, std::vector<Facet> facets)
    : n_(dimension), facets_(std::move(facets)) {
  if (n_ == 0 || n_ > 3) throw std::invalid_argument("polytope dimension must be 1..3");
  for (auto& f : facets_) {
    if (f.mu.size() != n_) throw std::invalid_argument("facet normal arity mismatch");
    long long g = 0;
    for (long long m : f.mu) g = gcd_ll(g, m);
    if (g == 0) throw std::invalid_argument("zero facet normal");
    if (g != 1) throw std::invalid_argument("facet normal not primitive");
  }

  // Boundedness: the recession cone {y : <y, mu_m> >= 0 for all m} must be
  // trivial.  Its extreme rays lie on n-1 active normals (n=1: test both
  // signs directly).
  auto in_cone = [&](const RatVec& y) {
    bool nonzero = false;
    for (const auto& v : y)
      if (v != 0) nonzero = true;
    if (!nonzero) return false;
    for (const auto& f : facets_) {
      Rational acc(0);
      for (size_t i = 0; i < n_; ++i) acc += Rational(f.mu[i]) * y[i];
      if (acc < 0) return false;
    }
    return true;
  };
  bool unbounded = false;
  if (n_ == 1) {
    unbounded = in_cone({Rational(1)}) || in_cone({Rational(-1)});
  } else {
    for_each_subset(facets_.size(), n_ - 1, [&](const std::vector<size_t>& idx) {
      if (unbounded) return;
      std::vector<const Facet*> rows;
      for (size_t i : idx) rows.push_back(&facets_[i]);
      auto ray = kernel_direction(rows, n_);
      if (ray.empty()) return;
      RatVec neg(ray);
      for (auto& v : neg) v = -v;
      if (in_cone(ray) || in_cone(neg)) unbounded = true;
    });
  }
  if (unbounded) throw std::domain_error("unbounded facet system");

  // Vertex enumeration: every n-subset of facets with invertible normal
  // matrix, filtered by feasibility.
  std::vector<RatVec> found;
  for_each_subset(facets_.size(), n_, [&](const std::vector<size_t>& idx) {
    Mat<Rational> a(n_, n_);
    std::vector<Rational> b(n_);
    for (size_t i = 0; i < n_; ++i) {
      for (size_t j = 0; j < n_; ++j) a(i, j) = Rational(facets_[idx[i]].mu[j]);
      b[i] = facets_[idx[i]].lambda;
    }
    std::vector<Rational> x;
    try {
      x = a.solve(b);
    } catch (const std::domain_error&) {
      return;
    }
    if (!contains(x)) return;
    if (std::find(found.begin(), found.end(), x) == found.end()) found.push_back(x);
  });
  std::sort(found.begin(), found.end());
  vertices_ = std::move(found);

  if (vertices_.empty()) throw std::domain_error("empty facet system");
  if (!strictly_contains(interior_point())) throw std::domain_error("facet system has empty interior");
}

bool Polytope::contains(const RatVec& x) const {
  for (const auto& f : facets_)
    if (f.l(x) < 0) return false;
  return true;
}

bool Polytope::strictly_contains(const RatVec& x) const {
  for (const auto& f : facets_)
    if (f.l(x) <= 0) return false;
  return true;
}

RatVec Polytope::interior_point() const {
  RatVec c(n_, Rational(0));
  for (const auto& v : vertices_)
    for (size_t i = 0; i < n_; ++i) c[i] += v[i];
  for (auto& q : c) q /= Rational(static_cast<long long>(vertices_.size()));
  return c;
}

namespace {

Rational factorial(unsigned n) {
  Rational r(1);
  for (unsigned i = 2; i <= n; ++i) r *= Rational(i);
  return r;
}

// Exact integral of x^exponent over the simplex with the given vertices via
// the barycentric monomial formula: with x = sum_i lambda_i v_i,
// int lambda^beta dlambda = prod(beta_i!) / (|beta| + n)! and the Jacobian
// |det(v_1-v_0, ..., v_n-v_0)|.
Rational monomial_over_simplex(const std::vector<RatVec>& verts,
                               const std::vector<unsigned>& exponent) {
  size_t n = verts.size() - 1;
  Mat<Rational> jac(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) jac(i, j) = verts[i + 1][j] - verts[0][j];
  Rational vol_factor = abs(jac.det());
  if (vol_factor == 0) return Rational(0);

  // Expand prod_k (sum_i lambda_i v_ik)^{e_k} into monomials in lambda.
  std::map<std::vector<unsigned>, Rational> lambda_poly;
  lambda_poly[std::vector<unsigned>(n + 1, 0)] = Rational(1);
  for (size_t k = 0; k < exponent.size(); ++k) {
    for (unsigned rep = 0; rep < exponent[k]; ++rep) {
      std::map<std::vector<unsigned>, Rational> next;
      for (const auto& [e, c] : lambda_poly) {
        for (size_t i = 0; i <= n; ++i) {
          if (verts[i][k] == 0) continue;
          auto e2 = e;
          e2[i] += 1;
          next[e2] += c * verts[i][k];
        }
      }
      lambda_poly = std::move(next);
    }
  }
  Rational acc(0);
  for (const auto& [e, c] : lambda_poly) {
    Rational num(1);
    unsigned total = 0;
    for (unsigned b : e) {
      num *= factorial(b);
      total += b;
    }
    acc += c * num / factorial(total + static_cast<unsigned>(n));
  }
  return acc * vol_factor;
}

}  // namespace

Rational Polytope::moment_integral(const std::vector<unsigned>& exponent) const {
  if (exponent.size() != n_) throw std::invalid_argument("exponent arity mismatch");

  // Triangulate: fan from the lexicographically smallest vertex (vertices_
  // are sorted, so vertices_[0]).  n=1: single segment.  n=2: fan over the
  // boundary edges not containing the apex.  n=3: triangulate each facet not
  // containing the apex and cone.
  const RatVec& apex = vertices_[0];
  Rational total(0);

  if (n_ == 1) {
    return monomial_over_simplex({vertices_.front(), vertices_.back()}, exponent);
  }

  // Vertices on each facet.
  auto facet_vertices = [&](const Facet& f) {
    std::vector<RatVec> on;
    for (const auto& v : vertices_)
      if (f.l(v) == 0) on.push_back(v);
    return on;
  };

  if (n_ == 2) {
    for (const auto& f : facets_) {
      auto on = facet_vertices(f);
      if (on.size() != 2) continue;  // facet degenerate or redundant
      if (f.l(apex) == 0) continue;
      total += monomial_over_simplex({apex, on[0], on[1]}, exponent);
    }
    return total;
  }

  // n == 3: order each facet's vertices around its 2D boundary by angle
  // around the facet centroid, then fan-triangulate the polygon.
  for (const auto& f : facets_) {
    auto on = facet_vertices(f);
    if (on.size() < 3) continue;
    if (f.l(apex) == 0) continue;
    RatVec centroid(n_, Rational(0));
    for (const auto& v : on)
      for (size_t i = 0; i < n_; ++i) centroid[i] += v[i];
    for (auto& q : centroid) q /= Rational(static_cast<long long>(on.size()));
    // Project onto two independent directions in the facet plane.
    RatVec u0;
    for (const auto& v : on) {
      RatVec d(n_);
      bool nonzero = false;
      for (size_t i = 0; i < n_; ++i) {
        d[i] = v[i] - centroid[i];
        if (d[i] != 0) nonzero = true;
      }
      if (nonzero) {
        u0 = d;
        break;
      }
    }
    // Second in-plane direction: mu x u0 (3D cross product).
    RatVec mu{Rational(f.mu[0]), Rational(f.mu[1]), Rational(f.mu[2])};
    RatVec u1{mu[1] * u0[2] - mu[2] * u0[1], mu[2] * u0[0] - mu[0] * u0[2],
              mu[0] * u0[1] - mu[1] * u0[0]};
    auto angle_key = [&](const RatVec& v) {
      double a = 0, b = 0;
      for (size_t i = 0; i < n_; ++i) {
        a += to_double(u0[i]) * to_double(v[i] - centroid[i]);
        b += to_double(u1[i]) * to_double(v[i] - centroid[i]);
      }
      return std::atan2(b, a);
    };
    std::sort(on.begin(), on.end(),
              [&](const RatVec& x, const RatVec& y) { return angle_key(x) < angle_key(y); });
    const RatVec& base = on[0];
    for (size_t i = 1; i + 1 < on.size(); ++i)
      total += monomial_over_simplex({apex, base, on[i], on[i + 1]}, exponent);
  }
  return total;
}

RatVec Polytope::futaki_vector() const {
  RatVec out(n_);
  for (size_t i = 0; i < n_; ++i) {
    std::vector<unsigned> e(n_, 0);
    e[i] = 1;
    out[i] = moment_integral(e);
  }
  return out;
}

DelzantVerdict is_delzant(const Polytope& P) {
  DelzantVerdict verdict;
  verdict.is_delzant = true;
  for (const auto& v : P.vertices()) {
    std::vector<const Facet*> active;
    for (const auto& f : P.facets())
      if (f.l(v) == 0) active.push_back(&f);
    if (active.size() != P.dim()) {
      verdict.is_delzant = false;
      verdict.failures.push_back({v, "wrong facet count"});
      continue;
    }
    Mat<Rational> m(P.dim(), P.dim());
    for (size_t i = 0; i < active.size(); ++i)
      for (size_t j = 0; j < P.dim(); ++j) m(i, j) = Rational(active[i]->mu[j]);
    Rational d = m.det();
    if (d != 1 && d != -1) {
      verdict.is_delzant = false;
      verdict.failures.push_back({v, "non-unimodular cone"});
    }
  }
  return verdict;
}

namespace {

Facet facet(std::vector<long long> mu, Rational lambda) { return Facet{std::move(mu), std::move(lambda)}; }

Rational param(const std::map<std::string, Rational>& params, const std::string& key,
               const Rational& fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

}  // namespace

Polytope polytope_catalog(const std::string& name, const std::map<std::string, Rational>& params) {
  const Rational one(1);
  if (name == "cp1") {
    return Polytope(1, {facet({1}, -one), facet({-1}, -one)});
  }
  if (name == "cp2") {
    return Polytope(2, {facet({1, 0}, -one), facet({0, 1}, -one), facet({-1, -1}, -one)});
  }
  if (name == "cp1xcp1" || name == "square") {
    return Polytope(2, {facet({1, 0}, -one), facet({-1, 0}, -one), facet({0, 1}, -one),
                        facet({0, -1}, -one)});
  }
  if (name == "hexagon") {
    return Polytope(2, {facet({1, 0}, -one), facet({-1, 0}, -one), facet({0, 1}, -one),
                        facet({0, -1}, -one), facet({-1, -1}, -one), facet({1, 1}, -one)});
  }
  if (name == "blowup1") {
    Rational a = param(params, "a", one);
    if (a <= 0) throw std::domain_error("blowup1 requires a > 0");
    // 1+x, 1+y, a-x-y, 1-x
    return Polytope(2, {facet({1, 0}, -one), facet({0, 1}, -one), facet({-1, -1}, -a),
                        facet({-1, 0}, -one)});
  }
  if (name == "sakane6") {
    // 1+x, 1-x, 1+y, 1+z, 1-x-y, 1+x-z
    return Polytope(3, {facet({1, 0, 0}, -one), facet({-1, 0, 0}, -one), facet({0, 1, 0}, -one),
                        facet({0, 0, 1}, -one), facet({-1, -1, 0}, -one), facet({1, 0, -1}, -one)});
  }
  if (name == "sixdim") {
    Rational a = param(params, "a", one);
    Rational c = param(params, "c", one);
    if (a <= 0 || c <= 0) throw std::domain_error("sixdim requires a > 0 and c > 0");
    // 1+x, 1-x, 1+y, 1+z, a-x-y, c+x-z
    return Polytope(3, {facet({1, 0, 0}, -one), facet({-1, 0, 0}, -one), facet({0, 1, 0}, -one),
                        facet({0, 0, 1}, -one), facet({-1, -1, 0}, -a), facet({1, 0, -1}, -c)});
  }
  throw std::invalid_argument("unknown polytope catalog name: " + name);
}

}  // namespace tclab
