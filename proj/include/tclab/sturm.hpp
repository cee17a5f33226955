#pragma once

#include "tclab/poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tclab {

/// Isolating interval for a real root, lo <= root <= hi.
struct IsolatedRoot {
  Rational lo, hi;
  int multiplicity = 1;
  Rational mid() const { return (lo + hi) / 2; }
};

enum class SignVerdict { Positive, NonnegativeWithRoots, Fails };

/// Exact sign certificate for a polynomial on an interval.
struct SignCertificate {
  SignVerdict verdict = SignVerdict::Fails;
  std::vector<IsolatedRoot> interior_roots;  // even multiplicity when verdict is NonnegativeWithRoots
  std::vector<Rational> endpoint_roots;      // open endpoints at which p vanishes
  std::optional<IsolatedRoot> witness;       // root (or point) witnessing failure
  std::string message;

  bool positive() const { return verdict == SignVerdict::Positive; }
  bool nonnegative() const { return verdict != SignVerdict::Fails; }
};

/// Sturm chain of p (with p assumed squarefree for exact root counts).
std::vector<PolyQ> sturm_chain(const PolyQ& p);

/// Number of distinct real roots of squarefree p in (a, b].
int sturm_count(const std::vector<PolyQ>& chain, const Rational& a, const Rational& b);

/// Distinct real roots of p in [a, b], isolated to width < `width`,
/// with multiplicities.  p must be nonzero.
std::vector<IsolatedRoot> isolate_roots(const PolyQ& p, const Rational& a, const Rational& b,
                                        const Rational& width = Rational(1, 1000000));

/// Squarefree decomposition p = c * prod f_i^i (Yun's algorithm); returns the
/// list of (factor, multiplicity) with nonconstant factors only.
std::vector<std::pair<PolyQ, int>> squarefree_decomposition(const PolyQ& p);

/// Decide the sign of p on the interval with the given openness flags by
/// Sturm root counting; the verdict is exact.
/// Throws std::domain_error("indeterminate sign") on the zero polynomial.
SignCertificate sturm_sign_certificate(const PolyQ& p, const Rational& a, const Rational& b,
                                       bool open_left, bool open_right);

}  // namespace tclab
