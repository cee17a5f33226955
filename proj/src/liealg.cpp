#include "tclab/liealg.hpp"

#include <stdexcept>

namespace tclab {

AlgElement bracket(const AlgElement& x, const AlgElement& y) { return x * y - y * x; }

Rational IsotropyDecomposition::Q(const AlgElement& x, const AlgElement& y) const {
  GaussQ tr(0);
  AlgElement prod = x * y;
  for (size_t i = 0; i < prod.rows(); ++i) tr = tr + prod(i, i);
  return -q_scale * tr.re;
}

AlgElement IsotropyDecomposition::project_p(const AlgElement& x) const {
  AlgElement acc(matrix_size, matrix_size);
  for (const auto& summand : summands)
    for (const auto& y : summand.basis) {
      Rational c = Q(x, y) / Q(y, y);
      acc = acc + GaussQ(c) * y;
    }
  return acc;
}

BracketProjection bracket_project(const AlgElement& x, const AlgElement& y,
                                  const IsotropyDecomposition& decomp) {
  if (x.rows() != decomp.matrix_size || y.rows() != decomp.matrix_size)
    throw std::invalid_argument("element size does not match the algebra");
  BracketProjection out;
  out.bracket = bracket(x, y);
  out.p_part = decomp.project_p(out.bracket);
  for (const auto& summand : decomp.summands)
    for (const auto& b : summand.basis)
      out.coefficients.push_back(decomp.Q(out.bracket, b) / decomp.Q(b, b));
  return out;
}

namespace {

// E_ij = e_ij - e_ji (real skew), size n.
AlgElement E(size_t n, size_t i, size_t j) {
  AlgElement m(n, n);
  m(i, j) = GaussQ(Rational(1));
  m(j, i) = GaussQ(Rational(-1));
  return m;
}

// F_ij = i(e_ij + e_ji).
AlgElement F(size_t n, size_t i, size_t j) {
  AlgElement m(n, n);
  m(i, j) = GaussQ(Rational(0), Rational(1));
  m(j, i) = GaussQ(Rational(0), Rational(1));
  return m;
}

AlgElement diag_im(size_t n, const std::vector<Rational>& entries) {
  AlgElement m(n, n);
  for (size_t i = 0; i < entries.size(); ++i) m(i, i) = GaussQ(Rational(0), entries[i]);
  return m;
}

Summand make_summand(std::vector<AlgElement> basis, SummandType type) {
  Summand s;
  s.dim = static_cast<int>(basis.size());
  s.basis = std::move(basis);
  s.type = type;
  return s;
}

}  // namespace

IsotropyDecomposition standard_decomposition(const std::string& name,
                                             const std::vector<long long>& params) {
  IsotropyDecomposition d;
  d.name = name;
  if (name == "stiefel") {
    if (params.size() != 1 || params[0] < 3)
      throw std::invalid_argument("stiefel requires n >= 3");
    size_t n = static_cast<size_t>(params[0]);
    size_t sz = n + 1;
    d.matrix_size = sz;
    // k = so(n-1) in the lower-right block (indices 2..n).
    for (size_t i = 2; i < sz; ++i)
      for (size_t j = i + 1; j < sz; ++j) d.k_basis.push_back(E(sz, i, j));
    std::vector<AlgElement> p1, p2;
    for (size_t i = 0; i < n - 1; ++i) {
      p1.push_back(E(sz, 0, 2 + i));
      p2.push_back(E(sz, 1, 2 + i));
    }
    d.summands.push_back(make_summand(std::move(p1), SummandType::Orthogonal));
    d.summands.push_back(make_summand(std::move(p2), SummandType::Orthogonal));
    d.summands.push_back(make_summand({E(sz, 0, 1)}, SummandType::Trivial));
    d.families.push_back({{0, 1}, SummandType::Orthogonal});
    return d;
  }
  if (name == "flag") {
    if (params.size() != 2 || params[0] < 2 || params[1] < 2)
      throw std::invalid_argument("flag requires n1, n2 >= 2");
    size_t n1 = static_cast<size_t>(params[0]), n2 = static_cast<size_t>(params[1]);
    size_t sz = n1 + n2 + 2;
    d.matrix_size = sz;
    // k = so(n1) x so(n2): blocks at indices [2, 2+n1) and [2+n1, 2+n1+n2).
    for (size_t i = 2; i < 2 + n1; ++i)
      for (size_t j = i + 1; j < 2 + n1; ++j) d.k_basis.push_back(E(sz, i, j));
    for (size_t i = 2 + n1; i < sz; ++i)
      for (size_t j = i + 1; j < sz; ++j) d.k_basis.push_back(E(sz, i, j));
    std::vector<AlgElement> p1;
    for (size_t i = 0; i < n1; ++i)
      for (size_t j = 0; j < n2; ++j) p1.push_back(E(sz, 2 + i, 2 + n1 + j));
    std::vector<AlgElement> p2, p3, p4, p5;
    for (size_t j = 0; j < n1; ++j) {
      p2.push_back(E(sz, 0, 2 + j));
      p3.push_back(E(sz, 1, 2 + j));
    }
    for (size_t j = 0; j < n2; ++j) {
      p4.push_back(E(sz, 0, 2 + n1 + j));
      p5.push_back(E(sz, 1, 2 + n1 + j));
    }
    d.summands.push_back(make_summand(std::move(p1), SummandType::Orthogonal));
    d.summands.push_back(make_summand(std::move(p2), SummandType::Orthogonal));
    d.summands.push_back(make_summand(std::move(p3), SummandType::Orthogonal));
    d.summands.push_back(make_summand(std::move(p4), SummandType::Orthogonal));
    d.summands.push_back(make_summand(std::move(p5), SummandType::Orthogonal));
    d.summands.push_back(make_summand({E(sz, 0, 1)}, SummandType::Trivial));
    d.families.push_back({{1, 2}, SummandType::Orthogonal});
    d.families.push_back({{3, 4}, SummandType::Orthogonal});
    return d;
  }
  if (name == "su3u1") {
    size_t sz = 3;
    d.matrix_size = sz;
    // k = u(1) spanned by diag(2i, -i, -i): commutes with the lower-right
    // su(2) block and rotates the (1,2)- and (1,3)-entry planes with equal
    // weight, making p1 and p2 equivalent unitary representations.
    d.k_basis.push_back(diag_im(sz, {Rational(2), Rational(-1), Rational(-1)}));
    d.summands.push_back(
        make_summand({E(sz, 0, 1), F(sz, 0, 1)}, SummandType::Unitary));  // p1
    d.summands.push_back(
        make_summand({E(sz, 0, 2), F(sz, 0, 2)}, SummandType::Unitary));  // p2
    d.summands.push_back(make_summand({E(sz, 1, 2)}, SummandType::Orthogonal));  // p3
    d.summands.push_back(make_summand({F(sz, 1, 2)}, SummandType::Orthogonal));  // p4
    d.summands.push_back(make_summand({diag_im(sz, {Rational(0), Rational(1), Rational(-1)})},
                                      SummandType::Orthogonal));  // p5
    d.families.push_back({{0, 1}, SummandType::Unitary});
    d.families.push_back({{2, 3, 4}, SummandType::Orthogonal});
    return d;
  }
  if (name == "su2") {
    size_t sz = 2;
    d.matrix_size = sz;
    d.q_scale = Rational(2);  // the halved basis below is then Q-orthonormal
    // X_i = (1/2){E, F, diag(i,-i)} satisfy the cyclic relations
    // [X_1, X_2] = X_3, [X_2, X_3] = X_1, [X_3, X_1] = X_2.
    GaussQ half(Rational(1, 2));
    AlgElement x1 = half * E(sz, 0, 1);
    AlgElement x2 = half * F(sz, 0, 1);
    AlgElement x3 = half * diag_im(sz, {Rational(1), Rational(-1)});
    d.summands.push_back(make_summand({x1}, SummandType::Orthogonal));
    d.summands.push_back(make_summand({x2}, SummandType::Orthogonal));
    d.summands.push_back(make_summand({x3}, SummandType::Orthogonal));
    d.families.push_back({{0, 1, 2}, SummandType::Orthogonal});
    return d;
  }
  if (name == "t3") {
    size_t sz = 3;
    d.matrix_size = sz;
    d.q_scale = Rational(1);
    for (size_t j = 0; j < 3; ++j) {
      std::vector<Rational> e(3, Rational(0));
      e[j] = Rational(1);
      d.summands.push_back(make_summand({diag_im(sz, e)}, SummandType::Orthogonal));
    }
    d.families.push_back({{0, 1, 2}, SummandType::Orthogonal});
    return d;
  }
  throw std::invalid_argument("unknown decomposition: " + name);
}

std::vector<AlgElement> equivalence_vectors(const IsotropyDecomposition& decomp, size_t i,
                                            size_t j) {
  if (i >= decomp.summands.size() || j >= decomp.summands.size())
    throw std::out_of_range("summand index");
  const auto& si = decomp.summands[i];
  const auto& sj = decomp.summands[j];
  if (si.dim != sj.dim) throw std::invalid_argument("summands are not an equivalent pair");
  size_t dim = static_cast<size_t>(si.dim);
  auto Zsum = [&](size_t from, size_t to, size_t shift) {
    AlgElement acc(decomp.matrix_size, decomp.matrix_size);
    for (size_t k = from; k < to; ++k)
      acc = acc + bracket(si.basis[k], sj.basis[k + shift]);
    return decomp.project_p(acc);
  };
  SummandType type = si.type == SummandType::Trivial ? SummandType::Orthogonal : si.type;
  if (type == SummandType::Orthogonal) {
    return {Zsum(0, dim, 0)};
  }
  if (type == SummandType::Unitary) {
    if (dim % 2 != 0) throw std::invalid_argument("unitary summands need even dimension");
    AlgElement z = Zsum(0, dim, 0);
    // W = sum_{k<=d/2} [Y^i_k, Y^j_{k+d/2}] - [Y^i_{k+d/2}, Y^j_k], projected.
    AlgElement w(decomp.matrix_size, decomp.matrix_size);
    for (size_t k = 0; k < dim / 2; ++k)
      w = w + bracket(si.basis[k], sj.basis[k + dim / 2]) -
          bracket(si.basis[k + dim / 2], sj.basis[k]);
    return {z, decomp.project_p(w)};
  }
  // Symplectic: four sums.
  if (dim % 2 != 0) throw std::invalid_argument("symplectic summands need even dimension");
  AlgElement z1(decomp.matrix_size, decomp.matrix_size), z2 = z1, z3 = z1, z4 = z1;
  for (size_t k = 0; k < dim / 2; ++k) {
    z1 = z1 + bracket(si.basis[k], sj.basis[k]);
    z3 = z3 + bracket(si.basis[k], sj.basis[k + dim / 2]);
    z2 = z2 + bracket(si.basis[k + dim / 2], sj.basis[k]);
    z4 = z4 + bracket(si.basis[k + dim / 2], sj.basis[k + dim / 2]);
  }
  return {decomp.project_p(z1), decomp.project_p(z2), decomp.project_p(z3),
          decomp.project_p(z4)};
}

DiagonalizabilityVerdict diagonalizability_verdict(const IsotropyDecomposition& decomp) {
  DiagonalizabilityVerdict verdict;
  if (decomp.families.empty()) {
    verdict.diagonalizable = true;
    verdict.rule_applied = "monotypic isotropy: metric automatically diagonal";
    return verdict;
  }

  auto flatten = [&](const AlgElement& m) {
    std::vector<Rational> row;
    for (size_t i = 0; i < m.rows(); ++i)
      for (size_t j = 0; j < m.cols(); ++j) {
        row.push_back(m(i, j).re);
        row.push_back(m(i, j).im);
      }
    return row;
  };
  auto rank_of = [&](const std::vector<AlgElement>& vecs) -> size_t {
    if (vecs.empty()) return 0;
    size_t cols = 2 * decomp.matrix_size * decomp.matrix_size;
    Mat<Rational> m(vecs.size(), cols);
    for (size_t r = 0; r < vecs.size(); ++r) {
      auto row = flatten(vecs[r]);
      for (size_t c = 0; c < cols; ++c) m(r, c) = row[c];
    }
    return m.rank();
  };

  std::vector<AlgElement> all_vectors;
  bool families_ok_alone = true;
  for (const auto& family : decomp.families) {
    DiagonalizabilityVerdict::FamilyReport report;
    report.members = family.members;
    report.type = family.type;
    size_t r = family.members.size();
    size_t per_pair = family.type == SummandType::Unitary    ? 2
                      : family.type == SummandType::Symplectic ? 4
                                                                : 1;
    report.required = per_pair * r * (r - 1) / 2;
    std::vector<AlgElement> fam_vectors;
    for (size_t a = 0; a < r; ++a)
      for (size_t b = a + 1; b < r; ++b) {
        auto vecs = equivalence_vectors(decomp, family.members[a], family.members[b]);
        for (auto& v : vecs) {
          fam_vectors.push_back(v);
          all_vectors.push_back(v);
        }
      }
    report.achieved = rank_of(fam_vectors);
    if (report.achieved < report.required) families_ok_alone = false;
    verdict.required_dim += report.required;
    verdict.families.push_back(std::move(report));
  }
  verdict.achieved_dim = rank_of(all_vectors);
  verdict.diagonalizable = verdict.achieved_dim == verdict.required_dim;
  if (verdict.diagonalizable) {
    verdict.rule_applied = "pairing vectors span the full space of non-diagonal unknowns";
  } else if (families_ok_alone) {
    verdict.inconclusive = true;
    verdict.rule_applied =
        "method inconclusive: each family passes alone but the combined span is deficient";
  } else {
    verdict.rule_applied = "not diagonalizable by this method: pairing-vector span deficient";
  }
  return verdict;
}

std::string summand_type_name(SummandType t) {
  switch (t) {
    case SummandType::Orthogonal: return "orthogonal";
    case SummandType::Unitary: return "unitary";
    case SummandType::Symplectic: return "symplectic";
    case SummandType::Trivial: return "trivial";
  }
  return "?";
}

}  // namespace tclab
