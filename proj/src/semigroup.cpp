#include "matfact/semigroup.hpp"

#include <algorithm>
#include <numeric>

#include "matfact/factor2.hpp"

namespace matfact {

bool verify_chain(const AffineSubspace& v, const Matrix& target, const ChainFactorization& chain) {
  for (const auto& f : chain.factors) {
    if (!v.contains(f)) return false;
  }
  return product(target.field(), target.rows(), chain.factors) == target;
}

namespace {

Matrix block_k(const Matrix& m) { return m.block(1, 1, m.rows() - 1, m.cols() - 1); }
Matrix block_l(const Matrix& m) { return m.block(0, 1, 1, m.cols() - 1); }

Matrix embed(const Matrix& l, const Matrix& p) {
  Matrix out = Matrix::identity(p.field(), p.rows() + 1);
  out.set_block(0, 1, l);
  out.set_block(1, 1, p);
  return out;
}

LinearSubspace span_of_units(const FieldSpec& f, std::size_t n, const std::function<bool(std::size_t, std::size_t)>& keep) {
  std::vector<Matrix> units;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (keep(i, j)) units.push_back(Matrix::elementary(f, n, i, j));
    }
  }
  return LinearSubspace::span_from(f, n, units);
}

void require_codim(const AffineSubspace& v) {
  const std::size_t n = v.n();
  if (v.codim() + 1 >= n) {
    raise(Errc::precondition_violated,
          "codim " + std::to_string(v.codim()) + " is not below n - 1 = " + std::to_string(n == 0 ? 0 : n - 1));
  }
}

}  // namespace

std::optional<GoodSituation> try_conjugator(const AffineSubspace& v, const Matrix& p) {
  const FieldSpec& f = v.field();
  const std::size_t n = v.n();
  AffineSubspace conj = conjugate(v, p);
  const LinearSubspace& tv = conj.translation();
  if (intersect(ortho_complement(tv), row_support(f, n, n, 0)).dim() != 0) return std::nullopt;

  const AffineSubspace e0_slice(Matrix::elementary(f, n, 0, 0),
                                span_of_units(f, n, [](std::size_t, std::size_t j) { return j >= 1; }));
  auto slice = intersect_affine(conj, e0_slice);
  if (!slice) return std::nullopt;
  std::vector<Matrix> ks;
  for (const auto& b : slice->translation().basis()) ks.push_back(block_k(b));
  AffineSubspace k_image(block_k(slice->base()), LinearSubspace::span_from(f, n - 1, ks));
  if (k_image.codim() + 2 >= n) return std::nullopt;

  const LinearSubspace top = span_of_units(f, n, [](std::size_t i, std::size_t j) { return i == 0 && j >= 1; });
  std::vector<Matrix> rows;
  for (const auto& b : intersect(tv, top).basis()) rows.push_back(block_l(b));
  LinearSubspace l_h = LinearSubspace::span_from(f, 1, n - 1, rows);
  if (l_h.dim() == 0) return std::nullopt;
  return GoodSituation{p, std::move(conj), std::move(*slice), std::move(k_image), std::move(l_h)};
}

SituationResult good_situation_transform(const AffineSubspace& v, const SearchBudget& budget) {
  budget.validate();
  const FieldSpec& f = v.field();
  const std::size_t n = v.n();
  if (n < 3) raise(Errc::precondition_violated, "good situation needs n >= 3");
  require_codim(v);
  if (n == 3 && v.translation() == LinearSubspace::sl(f, 3)) return Exceptional{v.base().trace()};

  if (auto gs = try_conjugator(v, Matrix::identity(f, n))) return std::move(*gs);
  std::vector<std::size_t> images(n);
  std::iota(images.begin(), images.end(), 0);
  while (std::next_permutation(images.begin(), images.end())) {
    if (auto gs = try_conjugator(v, permutation_matrix(f, images))) return std::move(*gs);
  }
  ScalarSampler sampler(f, budget.rng_seed);
  for (std::size_t t = 0; t < budget.max_random_trials; ++t) {
    if (auto gs = try_conjugator(v, sampler.next_invertible(n))) return std::move(*gs);
  }
  if (budget.allow_exhaustive && enumeration_size(f, n * n, budget.exhaustive_ceiling)) {
    std::optional<GoodSituation> found;
    enumerate_until(AffineSubspace::linear(LinearSubspace::full(f, n)), [&](const Matrix& p) {
      if (is_invertible(p)) found = try_conjugator(v, p);
      return found.has_value();
    });
    if (found) return std::move(*found);
    raise(Errc::internal_contradiction, "no conjugator satisfies conditions (i) and (ii)");
  }
  raise(Errc::budget_exhausted, "conjugator search exhausted its budget");
}

namespace {

// Factors of the (n-1)-block P lifted into the slice: product [[1, L'], [0, P]].
std::vector<Matrix> chain_block(const GoodSituation& gs, const Matrix& p, const SearchBudget& budget) {
  const FieldSpec& f = p.field();
  const std::size_t m = p.rows();
  const auto basis = gs.slice.translation().basis();
  Matrix k_cols(f, m * m, basis.size());
  for (std::size_t t = 0; t < basis.size(); ++t) {
    const Matrix k = block_k(basis[t]);
    for (std::size_t e = 0; e < m * m; ++e) k_cols(e, t) = k.entries()[e];
  }
  const Matrix k_base = block_k(gs.slice.base());
  std::vector<Matrix> out;
  for (const auto& pk : semigroup_factor(gs.k_image, p, budget).factors) {
    // Free coordinates are set to zero.
    const SolveResult sol = solve(k_cols, (pk - k_base).vectorize().transpose());
    const auto* c = std::get_if<Matrix>(&sol);
    if (!c) raise(Errc::internal_contradiction, "factor of K(W) does not lift to W");
    std::vector<Scalar> coefs(c->entries().begin(), c->entries().end());
    out.push_back(gs.slice.point(coefs));
  }
  return out;
}

std::vector<Matrix> invertible_good(const GoodSituation& gs, const Matrix& m, const SearchBudget& budget) {
  if (gs.conjugated.contains(m)) return {m};
  const FieldSpec& f = m.field();
  const std::size_t n = m.rows();
  Matrix col_base(f, n, n);
  col_base.set_block(0, 0, m.col(0));
  const AffineSubspace col_slice(col_base,
                                 span_of_units(f, n, [](std::size_t, std::size_t j) { return j >= 1; }));
  const auto same_col = intersect_affine(gs.conjugated, col_slice);
  if (!same_col) raise(Errc::internal_contradiction, "first-column map is not onto");
  const auto nmat = search_nonsingular(*same_col, budget);
  if (!nmat) raise(Errc::budget_exhausted, "no nonsingular element with the target's first column");

  const Matrix a = inverse(*nmat) * m;
  std::vector<Matrix> out{*nmat};
  const auto qs = chain_block(gs, block_k(a), budget);
  const Matrix l_prime = block_l(product(f, n, qs));
  out.insert(out.end(), qs.begin(), qs.end());
  const auto u = unipotent_row_factor(gs, block_l(a) - l_prime, budget);
  out.insert(out.end(), u.factors.begin(), u.factors.end());
  return out;
}

}  // namespace

ChainFactorization unipotent_row_factor(const GoodSituation& gs, const Matrix& l, const SearchBudget& budget) {
  const FieldSpec& f = l.field();
  const std::size_t n = gs.conjugated.n();
  const std::size_t m = n - 1;
  if (l.rows() != 1 || l.cols() != m) raise(Errc::dimension_mismatch, "row must be 1 x (n-1)");
  const Matrix identity = Matrix::identity(f, n);
  const Matrix target = embed(l, Matrix::identity(f, m));
  if (l.is_zero() && gs.slice.contains(identity)) return ChainFactorization{{}, identity};
  if (gs.slice.contains(target)) return ChainFactorization{{target}, identity};

  const Matrix e = gs.l_h.basis().front();
  const Matrix g = complete_to_basis(f, m, {e.transpose()}).transpose();
  const Matrix g_inv = inverse(g);

  std::vector<std::vector<Matrix>> inv_chains, chains;
  Matrix lambda = l;
  for (std::size_t k = 0; k < m; ++k) {
    // e R_k is the k-th unit row.
    const Matrix r = g_inv * swap_permutation(f, m, k);
    inv_chains.push_back(chain_block(gs, inverse(r), budget));
    chains.push_back(chain_block(gs, r, budget));
    const Matrix l1 = block_l(product(f, n, inv_chains.back()));
    const Matrix l2 = block_l(product(f, n, chains.back()));
    lambda -= l1 * r + l2;
  }
  ChainFactorization out{{}, identity};
  for (std::size_t k = 0; k < m; ++k) {
    auto& last = inv_chains[k].back();
    Matrix shift(f, n, n);
    shift.set_block(0, 1, e * lambda(0, k));
    last += shift;
    out.factors.insert(out.factors.end(), inv_chains[k].begin(), inv_chains[k].end());
    out.factors.insert(out.factors.end(), chains[k].begin(), chains[k].end());
  }
  if (product(f, n, out.factors) != target) raise(Errc::internal_contradiction, "unipotent chain mismatch");
  return out;
}

namespace {

bool is_transvection(const Matrix& m) {
  const Matrix d = m - Matrix::identity(m.field(), m.rows());
  return rank(d) == 1 && (d * d).is_zero();
}

// S with S (I + E(0,1)) S^{-1} = tau.
Matrix transvection_conjugator(const Matrix& tau) {
  const FieldSpec& f = tau.field();
  const Matrix d = tau - Matrix::identity(f, 3);
  std::size_t r = 0;
  while (d.row(r).is_zero()) ++r;
  const Matrix v = d.row(r);
  std::size_t j = 0;
  while (v(0, j).is_zero()) ++j;
  const Matrix u = d.col(j) * d(r, j).inverse();
  Matrix s(f, 3, 3);
  s.set_block(0, 0, u);
  s(j, 1) = v(0, j).inverse();
  for (const auto& x : kernel_basis(v)) {
    s.set_block(0, 2, x);
    if (is_invertible(s)) {
      if (conjugate(Matrix::from_rows(f, {{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}), s) != tau) break;
      return s;
    }
  }
  raise(Errc::internal_contradiction, "transvection conjugator construction failed");
}

// Columns: a lambda-eigenvector, then a basis of the fixed space.
Matrix eigenbasis(const Matrix& g, const Scalar& lambda) {
  const FieldSpec& f = g.field();
  const Matrix id = Matrix::identity(f, 3);
  const auto vl = kernel_basis(g - id * lambda);
  const auto v1 = kernel_basis(g - id);
  if (vl.size() != 1 || v1.size() != 2) raise(Errc::internal_contradiction, "matrix is not conjugate to Diag(l,1,1)");
  Matrix w(f, 3, 3);
  w.set_block(0, 0, vl[0]);
  w.set_block(0, 1, v1[0]);
  w.set_block(0, 2, v1[1]);
  return w;
}

// G ~ Diag(lambda, 1, 1), lambda not in {0, 1}: two factors of trace a.
std::vector<Matrix> dilatation_pair(const Matrix& g, const Scalar& lambda, const Scalar& a) {
  const FieldSpec& f = g.field();
  const Scalar zero = Scalar::zero(f), one = Scalar::one(f);
  const Matrix x(f, 3, 3, {a - one, one, zero, one, zero, zero, zero, zero, one});
  const Matrix y(f, 3, 3, {zero, lambda, zero, one, a - one, zero, zero, zero, one});
  const Matrix s = eigenbasis(g, lambda) * inverse(eigenbasis(x * y, lambda));
  return {conjugate(x, s), conjugate(y, s)};
}

std::vector<Matrix> transvection_chain(const Matrix& tau, const Scalar& a) {
  const FieldSpec& f = tau.field();
  const Matrix s = transvection_conjugator(tau);
  if (f.p() == 2) {
    if (a.is_one()) return {tau, Matrix::identity(f, 3)};
    return {conjugate(Matrix::from_rows(f, {{0, 1, 1}, {0, 0, 1}, {1, 0, 0}}), s),
            conjugate(Matrix::from_rows(f, {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}), s)};
  }
  // I + E(0,1) = F1 F2 with F1 ~ Diag(l,1,1) and F2 ~ Diag(1/l,1,1).
  const Scalar l(f, std::int64_t{2});
  const Scalar li = l.inverse();
  const Scalar zero = Scalar::zero(f), one = Scalar::one(f);
  const Matrix f1(f, 3, 3, {l, one - l, zero, zero, one, zero, zero, zero, one});
  const Matrix f2(f, 3, 3, {li, one, zero, zero, one, zero, zero, zero, one});
  auto out = dilatation_pair(conjugate(f1, s), l, a);
  const auto second = dilatation_pair(conjugate(f2, s), li, a);
  out.insert(out.end(), second.begin(), second.end());
  return out;
}

}  // namespace

ChainFactorization exceptional_factor(const Scalar& a, const Matrix& m, const SearchBudget&) {
  const FieldSpec& f = m.field();
  if (m.rows() != 3 || m.cols() != 3) raise(Errc::precondition_violated, "exceptional case needs n = 3");
  require_same_field(a.field(), f);
  if (!is_invertible(m)) raise(Errc::precondition_violated, "exceptional_factor needs an invertible target");
  const Matrix identity = Matrix::identity(f, 3);
  const auto in_h = [&](const Matrix& x) { return x.trace() == a; };
  const bool binary = f.p() == 2;

  ChainFactorization out{{}, identity};
  auto& fs = out.factors;
  const auto append = [&fs](const std::vector<Matrix>& xs) { fs.insert(fs.end(), xs.begin(), xs.end()); };
  const Scalar two(f, std::int64_t{2});
  if (binary && is_transvection(m)) {
    append(transvection_chain(m, a));
  } else if (in_h(m)) {
    fs.push_back(m);
  } else if (!binary && rank(m - identity) == 1 && !(m.trace() - two).is_zero() && !(m.trace() - two).is_one()) {
    append(dilatation_pair(m, m.trace() - two, a));
  } else {
    const auto tf = transvection_factor(m);
    for (const auto& tau : tf.transvections) append(transvection_chain(tau, a));
    const Scalar d = tf.dilatation(2, 2);
    if (!d.is_one()) {
      // diag(1,1,d) is Diag(d,1,1) up to the swap of e_0 and e_2.
      append(dilatation_pair(tf.dilatation, d, a));
    }
    if (fs.empty()) {
      const Matrix t = Matrix::from_rows(f, {{1, 1, 0}, {0, 1, 0}, {0, 0, 1}});
      if (binary) {
        append(transvection_chain(t, a));
        append(transvection_chain(t, a));
      } else {
        append(dilatation_pair(Matrix::diagonal({two, Scalar::one(f), Scalar::one(f)}), two, a));
        append(dilatation_pair(Matrix::diagonal({two.inverse(), Scalar::one(f), Scalar::one(f)}), two.inverse(), a));
      }
    }
  }
  for (const auto& x : fs) {
    if (!in_h(x)) raise(Errc::internal_contradiction, "exceptional factor has the wrong trace");
  }
  if (product(f, 3, fs) != m) raise(Errc::internal_contradiction, "exceptional chain mismatch");
  return out;
}

ChainFactorization singular_reduce(const AffineSubspace& v, const Matrix& m, const InvertibleSolver& solver,
                                   const SearchBudget& budget) {
  const FieldSpec& f = v.field();
  const std::size_t n = v.n();
  require_same_shape(m, v.base());
  const Matrix identity = Matrix::identity(f, n);
  const auto rnf_m = rank_normal_form(m);
  if (rnf_m.rank == n) raise(Errc::precondition_violated, "singular_reduce needs a singular target");
  if (v.contains(m)) return ChainFactorization{{m}, identity};

  // A row the translation space maps onto.
  const LinearSubspace perp = ortho_complement(v.translation());
  std::size_t row = n;
  for (std::size_t i = 0; i < n && row == n; ++i) {
    if (intersect(perp, column_support(f, n, n, i)).dim() == 0) row = i;
  }
  if (row == n) raise(Errc::precondition_violated, "every column support meets the orthogonal space");
  const auto zero_row = intersect_affine(
      v, AffineSubspace::linear(span_of_units(f, n, [row](std::size_t i, std::size_t) { return i != row; })));
  if (!zero_row) raise(Errc::internal_contradiction, "row map is not onto");

  const auto delete_row = [&](const Matrix& x) {
    Matrix out(f, n - 1, n);
    for (std::size_t i = 0, k = 0; i < n; ++i) {
      if (i != row) out.set_block(k++, 0, x.row(i));
    }
    return out;
  };
  std::vector<Matrix> alpha_basis;
  for (const auto& b : zero_row->translation().basis()) alpha_basis.push_back(delete_row(b));
  const AffineSubspace alpha(delete_row(zero_row->base()), LinearSubspace::span_from(f, n - 1, n, alpha_basis));
  const Matrix ya = find_rank_r_in_affine(alpha, n - 1, budget, n * (n - 2) + 1);
  Matrix y(f, n, n);
  for (std::size_t i = 0, k = 0; i < n; ++i) {
    if (i != row) y.set_block(i, 0, ya.row(k++));
  }

  // I - E(k,k) = Pi_k J Pi_k and Y = L J R give I - E(k,k) = (Pi_k L^{-1}) Y (R^{-1} Pi_k).
  const auto rnf_y = rank_normal_form(y);
  const Matrix ly_inv = inverse(rnf_y.left);
  const Matrix ry_inv = inverse(rnf_y.right);
  ChainFactorization out{{}, identity};
  const auto push_invertible = [&](const Matrix& g) {
    if (g == identity) return;
    const auto fs = solver(g);
    out.factors.insert(out.factors.end(), fs.begin(), fs.end());
  };
  Matrix pending = rnf_m.left;
  for (std::size_t k = rnf_m.rank; k < n; ++k) {
    std::vector<std::size_t> images(n);
    std::iota(images.begin(), images.end(), 0);
    std::swap(images[k], images[n - 1]);
    const Matrix swap_k = permutation_matrix(f, images);
    push_invertible(pending * swap_k * ly_inv);
    out.factors.push_back(y);
    pending = ry_inv * swap_k;
  }
  push_invertible(pending * rnf_m.right);
  if (product(f, n, out.factors) != m) raise(Errc::internal_contradiction, "singular reduction mismatch");
  return out;
}

ChainFactorization semigroup_factor(const AffineSubspace& v, const Matrix& m, const SearchBudget& budget) {
  budget.validate();
  const FieldSpec& f = v.field();
  const std::size_t n = v.n();
  require_same_shape(m, v.base());
  require_codim(v);
  const Matrix identity = Matrix::identity(f, n);
  if (v.contains(m)) return ChainFactorization{{m}, identity};
  if (n <= 2) raise(Errc::internal_contradiction, "full space does not contain the target");

  const SituationResult sit = good_situation_transform(v, budget);
  InvertibleSolver solver;
  Matrix conj = identity;
  if (const auto* ex = std::get_if<Exceptional>(&sit)) {
    const Scalar a = ex->a;
    solver = [a, &budget](const Matrix& g) { return exceptional_factor(a, g, budget).factors; };
  } else {
    const GoodSituation& gs = std::get<GoodSituation>(sit);
    conj = gs.conjugator;
    const Matrix conj_inv = inverse(conj);
    solver = [&gs, conj_inv, &budget](const Matrix& g) {
      auto fs = invertible_good(gs, conjugate(g, gs.conjugator), budget);
      for (auto& x : fs) x = conjugate(x, conj_inv);
      return fs;
    };
  }
  ChainFactorization out = is_invertible(m) ? ChainFactorization{solver(m), identity}
                                             : singular_reduce(v, m, solver, budget);
  out.conjugator = conj;
  if (!verify_chain(v, m, out)) raise(Errc::internal_contradiction, "semigroup chain failed its re-check");
  return out;
}

}  // namespace matfact
