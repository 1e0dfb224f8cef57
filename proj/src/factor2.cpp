#include "matfact/factor2.hpp"

namespace matfact {

Matrix SumOfProducts::total(const FieldSpec& field, std::size_t n) const {
  Matrix acc(field, n, n);
  for (const auto& [a, b] : terms) acc += a * b;
  return acc;
}

std::string to_string(N2Verdict v) {
  switch (v) {
    case N2Verdict::factorable: return "factorable";
    case N2Verdict::conjugate_H0: return "conjugate_H0";
    case N2Verdict::conjugate_T2plus: return "conjugate_T2plus";
  }
  return "unknown";
}

Matrix swap_permutation(const FieldSpec& field, std::size_t n, std::size_t r) {
  std::vector<std::size_t> images(n);
  for (std::size_t k = 0; k < n; ++k) images[k] = k;
  std::swap(images[0], images[r]);
  return permutation_matrix(field, images);
}

namespace {

void require_square_target(const Matrix& m, std::size_t n) {
  if (m.rows() != n || m.cols() != n) raise(Errc::dimension_mismatch, "target must be " + std::to_string(n) + "x" + std::to_string(n));
}

// Square matrices X whose vectorization is annihilated by every row of `constraints`.
LinearSubspace solution_space(const Matrix& constraints, std::size_t n) {
  std::vector<Matrix> mats;
  for (const auto& k : kernel_basis(constraints)) mats.push_back(k.transpose().reshape(n, n));
  return LinearSubspace::span_from(constraints.field(), n, mats);
}

// {C : C k = 0 for k in Ker M, row 0 of C is zero}.
LinearSubspace kernel_matching_space(const Matrix& m) {
  const FieldSpec& f = m.field();
  const std::size_t n = m.rows();
  const auto ker = kernel_basis(m);
  Matrix cons(f, n + ker.size() * n, n * n);
  for (std::size_t j = 0; j < n; ++j) cons(j, j) = Scalar::one(f);
  for (std::size_t t = 0; t < ker.size(); ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) cons(n + t * n + i, i * n + j) = ker[t](j, 0);
    }
  }
  return solution_space(cons, n);
}

// {X : X c = m} as an affine subspace, when C has the same kernel as M.
AffineSubspace left_solutions(const Matrix& c, const Matrix& m) {
  const FieldSpec& f = m.field();
  const std::size_t n = m.rows();
  const SolveResult sol = solve(c, m, SolveSide::left);
  const auto* b0 = std::get_if<Matrix>(&sol);
  if (!b0) raise(Errc::internal_contradiction, "B C = M has no solution although Ker C = Ker M");
  std::vector<Matrix> dirs;
  for (const auto& y : kernel_basis(c.transpose())) {
    for (std::size_t i = 0; i < n; ++i) {
      Matrix d(f, n, n);
      d.set_block(i, 0, y.transpose());
      dirs.push_back(std::move(d));
    }
  }
  return AffineSubspace(*b0, LinearSubspace::span_from(f, n, dirs));
}

std::size_t first_nonzero_row(const Matrix& a) {
  for (std::size_t r = 0; r < a.rows(); ++r) {
    if (!a.row(r).is_zero()) return r;
  }
  raise(Errc::invalid_input, "zero normal");
}

PairFactorization make_pair(Matrix b, Matrix c, const Hyperplane& h1, const Hyperplane& h2, const Matrix& m) {
  PairFactorization out{std::move(b), std::move(c), false, false};
  out.left_member = h1.contains(out.left);
  out.right_member = h2.contains(out.right);
  if (!out.verified(m)) raise(Errc::internal_contradiction, "pair factorization failed its re-check");
  return out;
}

// Singular M: C of rank M in V meet H2, then B in H1 on the affine fibre {B : B C = M}.
PairFactorization singular_pair(const Hyperplane& h1, const Hyperplane& h2, const Matrix& m,
                                const SearchBudget& budget) {
  const FieldSpec& f = m.field();
  const std::size_t n = m.rows();
  const Matrix pi = swap_permutation(f, n, first_nonzero_row(h1.normal()));
  const Hyperplane g1 = conjugate(h1, pi);
  const Hyperplane g2 = conjugate(h2, pi);
  const Matrix mc = conjugate(m, pi);
  const std::size_t r = rank(mc);

  const LinearSubspace v = intersect(kernel_matching_space(mc), g2.subspace());
  const Matrix c = find_rank_r_in_affine(AffineSubspace::linear(v), r, budget);
  const HyperplaneMeet meet = affine_meet_hyperplane(g1, left_solutions(c, mc));
  const auto* b = std::get_if<Matrix>(&meet);
  if (!b) raise(Errc::internal_contradiction, "fibre translation lies inside the hyperplane");
  const Matrix pi_inv = pi.transpose();
  return make_pair(pi_inv * *b * pi, pi_inv * c * pi, h1, h2, m);
}

}  // namespace

SumOfProducts sum_of_products_decompose(const LinearSubspace& v, const Matrix& m) {
  const std::size_t n = v.n();
  require_square_target(m, n);
  require_same_field(v.field(), m.field());
  const FieldSpec& f = v.field();
  if (v.contains(Matrix::identity(f, n)) && v.contains(m)) return SumOfProducts{{{m, Matrix::identity(f, n)}}};

  const auto basis = v.basis();
  std::vector<std::pair<std::size_t, std::size_t>> index;
  Matrix cols(f, n * n, basis.size() * basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const Matrix prod = basis[i] * basis[j];
      for (std::size_t k = 0; k < n * n; ++k) cols(k, index.size()) = prod.entries()[k];
      index.emplace_back(i, j);
    }
  }
  const SolveResult sol = solve(cols, m.vectorize().transpose());
  const auto* x = std::get_if<Matrix>(&sol);
  if (!x) raise(Errc::span_deficient, "target lies outside the span of V * V");
  SumOfProducts out;
  for (std::size_t t = 0; t < index.size(); ++t) {
    const Scalar& c = (*x)(t, 0);
    if (c.is_zero()) continue;
    out.terms.emplace_back(basis[index[t].first] * c, basis[index[t].second]);
  }
  return out;
}

PairFactorization two_hyperplanes_factor(const Hyperplane& h1, const Hyperplane& h2, const Matrix& m,
                                         const SearchBudget& budget) {
  require_same_shape(h1.normal(), h2.normal());
  const std::size_t n = h1.n();
  require_square_target(m, n);
  require_same_field(h1.field(), m.field());
  if (n < 3) raise(Errc::precondition_violated, "two-factor hyperplane splitting needs n >= 3");
  const FieldSpec& f = m.field();
  if (m.is_zero()) return make_pair(Matrix(f, n, n), Matrix(f, n, n), h1, h2, m);

  const auto ia = inverse_and_adjugate(m);
  if (ia.inv) {
    // B = P in H1 and C = P^{-1} M in H2, i.e. P^{-1} in the hyperplane with normal M A2.
    const Matrix p = inverse_pair(h1, Hyperplane(m * h2.normal()), budget);
    return make_pair(p, inverse(p) * m, h1, h2, m);
  }
  return singular_pair(h1, h2, m, budget);
}

PairFactorization hyperplane_pair_factor(const Hyperplane& h, const Matrix& m, const SearchBudget& budget) {
  const std::size_t n = h.n();
  require_square_target(m, n);
  require_same_field(h.field(), m.field());
  if (n < 3) raise(Errc::precondition_violated, "hyperplane pair factorization needs n >= 3");
  const FieldSpec& f = m.field();
  if (m.is_zero()) return make_pair(Matrix(f, n, n), Matrix(f, n, n), h, h, m);

  const auto ia = inverse_and_adjugate(m);
  if (ia.inv) {
    // C = P in H and B = M P^{-1} in H, i.e. P^{-1} in the hyperplane with normal A M.
    const Matrix p = inverse_pair(h, Hyperplane(h.normal() * m), budget);
    return make_pair(m * inverse(p), p, h, h, m);
  }
  return singular_pair(h, h, m, budget);
}

namespace {

struct RankOne {
  Matrix u;  // column
  Matrix v;  // row
};

// D = u v for a rank-one D, with u normalized to 1 at the first nonzero row.
RankOne split_rank_one(const Matrix& d) {
  const std::size_t r = first_nonzero_row(d);
  const Matrix v = d.row(r);
  std::size_t j = 0;
  while (v(0, j).is_zero()) ++j;
  Matrix u = d.col(j) * d(r, j).inverse();
  return RankOne{std::move(u), v};
}

Matrix column(const FieldSpec& f, const std::vector<Scalar>& xs) { return Matrix(f, xs.size(), 1, xs); }

}  // namespace

N2Class n2_classify(const Hyperplane& h) {
  if (h.n() != 2) raise(Errc::precondition_violated, "n2_classify needs n = 2");
  const Matrix& a = h.normal();
  const FieldSpec& f = a.field();
  if (rank(a) == 2) return N2Class{N2Verdict::factorable, std::nullopt};
  const auto [u, v] = split_rank_one(a);
  const Scalar tr = a.trace();
  Matrix s_inv(f, 2, 2);
  s_inv.set_block(0, 0, u);
  if (!tr.is_zero()) {
    // v w = 0 gives S A S^{-1} = tr(A) E(0,0).
    s_inv.set_block(0, 1, column(f, {-v(0, 1), v(0, 0)}));
    return N2Class{N2Verdict::conjugate_H0, inverse(s_inv)};
  }
  // v z != 0 gives S A S^{-1} = (v z) E(0,1).
  const std::size_t j = v(0, 0).is_zero() ? 1 : 0;
  s_inv(j, 1) = Scalar::one(f);
  return N2Class{N2Verdict::conjugate_T2plus, inverse(s_inv)};
}

namespace {

std::optional<PairFactorization> n2_factorable_nonsingular(const Hyperplane& h, const Matrix& m,
                                                           const SearchBudget& budget) {
  const FieldSpec& f = m.field();
  // The adjugate is linear for 2 x 2 matrices: B = M adj(N) with N in H gives C = N / det N.
  std::vector<Matrix> images;
  for (const auto& nb : h.subspace().basis()) images.push_back(m * adjugate(nb));
  const LinearSubspace v = intersect(LinearSubspace::span_from(f, 2, images), h.subspace());
  const Matrix m_inv = inverse(m);
  if (auto b = search_nonsingular(AffineSubspace::linear(v), budget)) {
    const Matrix c = adjugate(m_inv * *b);
    return make_pair(*b, c * determinant(c).inverse(), h, h, m);
  }
  SearchOutcome out = search_affine(AffineSubspace::linear(h.subspace()), budget, [&](const Matrix& b) {
    const auto ia = inverse_and_adjugate(b);
    return ia.inv && h.contains(*ia.inv * m);
  });
  if (out.found) return make_pair(*out.found, inverse(*out.found) * m, h, h, m);
  if (out.complete) return std::nullopt;
  raise(Errc::budget_exhausted, "no nonsingular factor found");
}

std::optional<PairFactorization> n2_factorable_singular(const Hyperplane& h, const Matrix& m,
                                                        const SearchBudget& budget) {
  const FieldSpec& f = m.field();
  const Matrix e = kernel_basis(m).front();
  Matrix cons(f, 2, 4);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) cons(i, i * 2 + j) = e(j, 0);
  }
  const LinearSubspace cs = intersect(solution_space(cons, 2), h.subspace());
  std::optional<PairFactorization> found;
  SearchOutcome out = search_affine(AffineSubspace::linear(cs), budget, [&](const Matrix& c) {
    if (c.is_zero()) return false;
    const HyperplaneMeet meet = affine_meet_hyperplane(h, left_solutions(c, m));
    if (const auto* b = std::get_if<Matrix>(&meet)) {
      found = make_pair(*b, c, h, h, m);
      return true;
    }
    return false;
  });
  if (found) return found;
  if (out.complete) return std::nullopt;
  raise(Errc::budget_exhausted, "no kernel-matching factor found");
}

// H0 = {X(0,0) = 0}: M is a product unless M(0,0) = 0 while M(0,1) and M(1,0) are nonzero.
std::variant<std::pair<Matrix, Matrix>, Impossible> h0_factor(const Matrix& m) {
  const FieldSpec& f = m.field();
  const Scalar x = m(0, 0), y = m(0, 1), z = m(1, 0), w = m(1, 1);
  const Scalar zero = Scalar::zero(f), one = Scalar::one(f);
  const auto mat = [&](Scalar a, Scalar b, Scalar c, Scalar d) { return Matrix(f, 2, 2, {a, b, c, d}); };
  if (!x.is_zero()) {
    const Scalar d = z / x;
    return std::pair{mat(zero, one, one, d), mat(zero, w - d * y, x, y)};
  }
  if (y.is_zero()) return std::pair{mat(zero, zero, zero, one), mat(zero, zero, z, w)};
  if (z.is_zero()) return std::pair{mat(zero, one, one, zero), mat(zero, w, zero, y)};
  return Impossible{"entry (0,0) of B C equals B(0,1) C(1,0); it vanishes only if row 0 or column 0 of the product vanishes"};
}

}  // namespace

N2PairResult n2_pair_factor(const Hyperplane& h, const Matrix& m, const SearchBudget& budget) {
  if (h.n() != 2) raise(Errc::precondition_violated, "n2_pair_factor needs n = 2");
  require_square_target(m, 2);
  require_same_field(h.field(), m.field());
  const FieldSpec& f = m.field();
  if (m.is_zero()) return make_pair(Matrix(f, 2, 2), Matrix(f, 2, 2), h, h, m);

  const N2Class cls = n2_classify(h);
  if (cls.verdict == N2Verdict::factorable) {
    auto out = is_invertible(m) ? n2_factorable_nonsingular(h, m, budget) : n2_factorable_singular(h, m, budget);
    if (!out) raise(Errc::internal_contradiction, "exhaustive search found no factorization for a rank-2 normal");
    return *out;
  }
  const Matrix& s = *cls.conjugator;
  const Matrix s_inv = inverse(s);
  const Matrix mc = conjugate(m, s);
  if (cls.verdict == N2Verdict::conjugate_H0) {
    auto res = h0_factor(mc);
    if (auto* imp = std::get_if<Impossible>(&res)) return *imp;
    const auto& [b, c] = std::get<std::pair<Matrix, Matrix>>(res);
    return make_pair(s_inv * b * s, s_inv * c * s, h, h, m);
  }
  if (!mc(1, 0).is_zero()) {
    return Impossible{"conjugate target is not upper triangular, and products of upper triangular matrices are"};
  }
  return make_pair(m, Matrix::identity(f, 2), h, h, m);
}

DegenerateResult degenerate_pair_witness(const LinearSubspace& v, const LinearSubspace& w) {
  const std::size_t n = v.n();
  if (w.n() != n) raise(Errc::dimension_mismatch, "V and W must have the same size");
  require_same_field(v.field(), w.field());
  if (v.codim() + w.codim() != n) raise(Errc::precondition_violated, "codim V + codim W must equal n");
  const FieldSpec& f = v.field();
  const LinearSubspace span = product_span_two(v, w);
  if (span.dim() == n * n) return NonDegenerate{};

  const Matrix d = ortho_complement(span).basis().front();
  if (rank(d) != 1) raise(Errc::internal_contradiction, "orthogonal of V W contains a matrix of rank > 1");
  const auto [u, row] = split_rank_one(d);
  // D = P E(0,0) R.
  const Matrix p = complete_to_basis(f, n, {u});
  const Matrix r = complete_to_basis(f, n, {row.transpose()}).transpose();

  const LinearSubspace vr = transform(v, r, Matrix::identity(f, n));
  std::vector<Matrix> top_rows;
  for (const auto& b : vr.basis()) top_rows.push_back(b.row(0));
  const LinearSubspace e = LinearSubspace::span_from(f, 1, n, top_rows);
  const std::size_t dim_e = e.dim();
  const std::size_t k = n - dim_e;

  std::vector<Matrix> e_cols;
  for (const auto& b : e.basis()) e_cols.push_back(b.transpose());
  const Matrix completed = complete_to_basis(f, n, e_cols).transpose();
  Matrix q(f, n, n);
  q.set_block(0, 0, completed.block(dim_e, 0, k, n));
  q.set_block(k, 0, completed.block(0, 0, dim_e, n));

  DegenerateWitness out{k, inverse(r), q, inverse(p)};
  const bool v_ok = transform(degenerate_left_block(f, n, k), out.P, out.Q) == v;
  const bool w_ok = transform(degenerate_right_block(f, n, k), inverse(out.Q), out.R) == w;
  if (!v_ok || !w_ok) raise(Errc::internal_contradiction, "degenerate witness failed its re-check");
  return out;
}

}  // namespace matfact
