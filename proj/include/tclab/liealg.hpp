#pragma once

#include "tclab/matrix.hpp"
#include "tclab/rational.hpp"

#include <string>
#include <vector>

namespace tclab {

/// Gaussian rational a + bi; the coefficient field for su(n) matrices.
struct GaussQ {
  Rational re, im;

  GaussQ() = default;
  GaussQ(long long r) : re(r) {}
  GaussQ(Rational r) : re(std::move(r)) {}
  GaussQ(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  friend GaussQ operator+(const GaussQ& a, const GaussQ& b) { return {a.re + b.re, a.im + b.im}; }
  friend GaussQ operator-(const GaussQ& a, const GaussQ& b) { return {a.re - b.re, a.im - b.im}; }
  friend GaussQ operator*(const GaussQ& a, const GaussQ& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussQ operator/(const GaussQ& a, const GaussQ& b) {
    Rational n = b.re * b.re + b.im * b.im;
    if (n == 0) throw std::domain_error("division by zero Gaussian rational");
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  friend bool operator==(const GaussQ& a, const GaussQ& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const GaussQ& a, const GaussQ& b) { return !(a == b); }
};

/// Element of a matrix Lie algebra: skew-Hermitian (so: real skew-symmetric).
using AlgElement = Mat<GaussQ>;

AlgElement bracket(const AlgElement& x, const AlgElement& y);

enum class SummandType { Orthogonal, Unitary, Symplectic, Trivial };

struct Summand {
  std::vector<AlgElement> basis;
  SummandType type = SummandType::Orthogonal;
  int dim = 0;
};

/// Decomposition g = k + p_1 + ... + p_m with Q-orthonormal summand bases
/// and the families of mutually equivalent summands recorded.
struct IsotropyDecomposition {
  std::string name;
  size_t matrix_size = 0;
  Rational q_scale = Rational(1, 2);  // Q(X,Y) = -q_scale Re tr(XY)
  std::vector<AlgElement> k_basis;
  std::vector<Summand> summands;
  struct Family {
    std::vector<size_t> members;  // indices into summands, all equivalent
    SummandType type = SummandType::Orthogonal;
  };
  std::vector<Family> families;

  Rational Q(const AlgElement& x, const AlgElement& y) const;
  /// Q-orthogonal projection of x onto p = sum of summands.
  AlgElement project_p(const AlgElement& x) const;
};

/// [x, y] with its p-projection and the coefficients against every summand
/// basis vector (flattened in summand order).
struct BracketProjection {
  AlgElement bracket;
  AlgElement p_part;
  std::vector<Rational> coefficients;
};

BracketProjection bracket_project(const AlgElement& x, const AlgElement& y,
                                  const IsotropyDecomposition& decomp);

/// Catalog: "stiefel" (param n >= 3, so(n+1)/so(n-1)),
/// "flag" (params n1, n2 >= 2, so(n1+n2+2)/(so(n1) x so(n2))),
/// "su3u1" (su(3)/u(1)), "su2" (trivial isotropy), "t3" (torus).
IsotropyDecomposition standard_decomposition(const std::string& name,
                                             const std::vector<long long>& params = {});

/// The pairing vectors of two equivalent summands (indices into summands):
/// orthogonal -> {Z}, unitary -> {Z, W}, symplectic -> {Z1, Z3, Z2, Z4}.
std::vector<AlgElement> equivalence_vectors(const IsotropyDecomposition& decomp, size_t i,
                                            size_t j);

struct DiagonalizabilityVerdict {
  bool diagonalizable = false;
  bool inconclusive = false;  // combined span deficient while each family passes alone
  size_t required_dim = 0;
  size_t achieved_dim = 0;
  std::string rule_applied;
  struct FamilyReport {
    std::vector<size_t> members;
    SummandType type;
    size_t required = 0;
    size_t achieved = 0;  // rank of this family's vectors alone
  };
  std::vector<FamilyReport> families;
};

/// Exact rank computation of the span of the applicable pairing vectors over
/// Q; diagonalizable iff the combined span has the full required dimension.
DiagonalizabilityVerdict diagonalizability_verdict(const IsotropyDecomposition& decomp);

std::string summand_type_name(SummandType t);

}  // namespace tclab
