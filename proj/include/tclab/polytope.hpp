#pragma once

#include "tclab/matrix.hpp"
#include "tclab/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace tclab {

using RatVec = std::vector<Rational>;

/// One defining inequality <x, mu> >= lambda with primitive integer normal.
struct Facet {
  std::vector<long long> mu;
  Rational lambda;

  Rational l(const RatVec& x) const {
    Rational acc = -lambda;
    for (size_t i = 0; i < mu.size(); ++i) acc += Rational(mu[i]) * x[i];
    return acc;
  }
  double l(const std::vector<double>& x) const {
    double acc = -to_double(lambda);
    for (size_t i = 0; i < mu.size(); ++i) acc += static_cast<double>(mu[i]) * x[i];
    return acc;
  }
};

/// Compact convex polytope given by facet inequalities <x, mu_m> >= lambda_m.
/// Vertices are enumerated on construction; construction throws if the facet
/// system is unbounded or has empty interior.
class Polytope {
 public:
  Polytope(size_t dimension, std::vector<Facet> facets);

  size_t dim() const { return n_; }
  const std::vector<Facet>& facets() const { return facets_; }
  const std::vector<RatVec>& vertices() const { return vertices_; }

  bool contains(const RatVec& x) const;
  bool strictly_contains(const RatVec& x) const;
  RatVec interior_point() const;  // vertex average

  /// Exact integral of x^exponent over the polytope, by triangulation into
  /// simplices fanned from the lexicographically smallest vertex.
  Rational moment_integral(const std::vector<unsigned>& exponent) const;

  /// Component i is the barycenter integral int_P x_i dx; the all-zero vector
  /// is the vanishing of the toric Futaki obstruction.  Reported without any
  /// (2*pi)^n normalization.
  RatVec futaki_vector() const;

 private:
  size_t n_;
  std::vector<Facet> facets_;
  std::vector<RatVec> vertices_;
};

struct DelzantFailure {
  RatVec vertex;
  std::string reason;  // "wrong facet count" | "non-unimodular cone"
};

struct DelzantVerdict {
  bool is_delzant = false;
  std::vector<DelzantFailure> failures;
};

/// At every vertex exactly n facets must be active with unimodular normals.
DelzantVerdict is_delzant(const Polytope& P);

/// Named polytopes from the catalog of explicit metrics.  Parameters: eg
/// blowup1 takes "a" (0 < a < 2), sixdim takes "a" and "c" (both > 0).
Polytope polytope_catalog(const std::string& name,
                          const std::map<std::string, Rational>& params = {});

}  // namespace tclab
