#include "tclab/sturm.hpp"

#include <stdexcept>

namespace tclab {

std::vector<PolyQ> sturm_chain(const PolyQ& p) {
  std::vector<PolyQ> chain;
  chain.push_back(primitive_part(p));
  PolyQ d = p.derivative();
  if (!d.is_zero()) chain.push_back(primitive_part(d));
  while (chain.size() >= 2 && chain.back().degree() > 0) {
    auto [q, r] = divmod(chain[chain.size() - 2], chain.back());
    (void)q;
    if (r.is_zero()) break;
    chain.push_back(primitive_part(-r));
  }
  return chain;
}

static int sign_variations(const std::vector<PolyQ>& chain, const Rational& x) {
  int variations = 0, last = 0;
  for (const auto& p : chain) {
    int s = sign(p(x));
    if (s != 0) {
      if (last != 0 && s != last) ++variations;
      last = s;
    }
  }
  return variations;
}

int sturm_count(const std::vector<PolyQ>& chain, const Rational& a, const Rational& b) {
  return sign_variations(chain, a) - sign_variations(chain, b);
}

std::vector<std::pair<PolyQ, int>> squarefree_decomposition(const PolyQ& p) {
  std::vector<std::pair<PolyQ, int>> out;
  if (p.degree() <= 0) return out;
  PolyQ a0 = gcd(p, p.derivative());
  PolyQ b = divmod(p, a0).first;
  PolyQ c = divmod(p.derivative(), a0).first;
  PolyQ d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    PolyQ ai = gcd(b, d);
    if (ai.degree() > 0) out.emplace_back(ai, i);
    b = divmod(b, ai).first;
    c = divmod(d, ai).first;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

// Isolate roots of squarefree f in the half-open interval (lo, hi].
static void isolate_rec(const std::vector<PolyQ>& chain, const PolyQ& f, const Rational& lo,
                        const Rational& hi, const Rational& width,
                        std::vector<IsolatedRoot>& out) {
  int count = sturm_count(chain, lo, hi);
  if (count == 0) return;
  if (count == 1 && hi - lo < width) {
    out.push_back({lo, hi, 1});
    return;
  }
  Rational mid = (lo + hi) / 2;
  if (f(mid) == 0 && count == 1) {
    out.push_back({mid, mid, 1});
    return;
  }
  isolate_rec(chain, f, lo, mid, width, out);
  isolate_rec(chain, f, mid, hi, width, out);
}

std::vector<IsolatedRoot> isolate_roots(const PolyQ& p, const Rational& a, const Rational& b,
                                        const Rational& width) {
  if (p.is_zero()) throw std::domain_error("cannot isolate roots of the zero polynomial");
  std::vector<IsolatedRoot> out;
  if (p.degree() <= 0) return out;
  const PolyQ x_minus_a{-a, Rational(1)};
  const PolyQ x_minus_b{-b, Rational(1)};
  for (auto& [f, mult] : squarefree_decomposition(p)) {
    // Pin exact roots at the endpoints first so interior isolation never has
    // to disambiguate an isolating interval that touches a or b.
    if (f(a) == 0) {
      out.push_back({a, a, mult});
      f = divmod(f, x_minus_a).first;
    }
    if (!f.is_zero() && f.degree() > 0 && f(b) == 0) {
      out.push_back({b, b, mult});
      f = divmod(f, x_minus_b).first;
    }
    if (f.degree() <= 0) continue;
    auto chain = sturm_chain(f);
    std::vector<IsolatedRoot> roots;
    isolate_rec(chain, f, a, b, width, roots);
    for (auto& r : roots) {
      r.multiplicity = mult;
      out.push_back(r);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const IsolatedRoot& x, const IsolatedRoot& y) { return x.mid() < y.mid(); });
  return out;
}

SignCertificate sturm_sign_certificate(const PolyQ& p, const Rational& a, const Rational& b,
                                       bool open_left, bool open_right) {
  if (p.is_zero()) throw std::domain_error("indeterminate sign");
  if (a > b || (a == b && (open_left || open_right)))
    throw std::invalid_argument("empty interval");

  SignCertificate cert;
  if (a == b) {
    int s = sign(p(a));
    if (s > 0) cert.verdict = SignVerdict::Positive;
    else if (s == 0) {
      cert.verdict = SignVerdict::NonnegativeWithRoots;
      cert.interior_roots.push_back({a, a, 1});
    } else {
      cert.verdict = SignVerdict::Fails;
      cert.witness = IsolatedRoot{a, a, 1};
      cert.message = "negative at the point";
    }
    return cert;
  }

  for (auto [x, open] : {std::pair{a, open_left}, std::pair{b, open_right}}) {
    if (!open && p(x) < 0) {
      cert.verdict = SignVerdict::Fails;
      cert.witness = IsolatedRoot{x, x, 1};
      cert.message = "negative at closed endpoint " + rat_to_string(x);
      return cert;
    }
  }

  std::vector<IsolatedRoot> interior;
  for (const auto& r : isolate_roots(p, a, b)) {
    bool at_a = (r.lo == r.hi && r.lo == a);
    bool at_b = (r.lo == r.hi && r.lo == b);
    if (at_a && open_left) cert.endpoint_roots.push_back(a);
    else if (at_b && open_right) cert.endpoint_roots.push_back(b);
    else if (at_a || at_b) interior.push_back(r);  // closed endpoint root: value 0 attained
    else {
      interior.push_back(r);
      if (r.multiplicity % 2 == 1) {
        // Odd-multiplicity root strictly inside: the sign changes across it.
        cert.verdict = SignVerdict::Fails;
        cert.witness = r;
        cert.message = "sign change at root in [" + rat_to_string(r.lo) + ", " +
                       rat_to_string(r.hi) + "]";
        cert.interior_roots = interior;
        return cert;
      }
    }
  }

  // No interior sign change: the sign away from roots is constant.
  Rational sample = (a + b) / 2;
  Rational step = (b - a) / 4;
  while (p(sample) == 0) {
    sample += step;
    step /= 3;
  }
  if (p(sample) < 0) {
    cert.verdict = SignVerdict::Fails;
    cert.witness = IsolatedRoot{sample, sample, 1};
    cert.message = "negative on the interval interior";
    cert.interior_roots = interior;
    return cert;
  }
  if (interior.empty()) {
    cert.verdict = SignVerdict::Positive;
  } else {
    cert.verdict = SignVerdict::NonnegativeWithRoots;
    cert.interior_roots = interior;
  }
  return cert;
}

}  // namespace tclab
