#include <gtest/gtest.h>

#include "matfact/factor2.hpp"
#include "matfact/oracle.hpp"
#include "support.hpp"

using namespace mft;

namespace {

Matrix E(const FieldSpec& f, std::size_t n, std::size_t i, std::size_t j) { return Matrix::elementary(f, n, i, j); }

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return Errc::invalid_input;
}

void expect_pair(const Hyperplane& h1, const Hyperplane& h2, const Matrix& m, const PairFactorization& pf) {
  EXPECT_TRUE(pf.verified(m));
  EXPECT_EQ(pf.left * pf.right, m);
  EXPECT_TRUE(trace_form(h1.normal(), pf.left).is_zero());
  EXPECT_TRUE(trace_form(h2.normal(), pf.right).is_zero());
}

bool subspace_equal_via_basis(const LinearSubspace& a, const LinearSubspace& b) {
  return a.includes(b) && b.includes(a);
}

}  // namespace

TEST(SumOfProducts, Examples) {
  Gen g(1);
  const Matrix m = g.matrix(Q, 3, 3);
  const auto full = sum_of_products_decompose(LinearSubspace::full(Q, 3), m);
  ASSERT_EQ(full.terms.size(), 1u);
  EXPECT_EQ(full.terms[0].first, m);
  EXPECT_EQ(full.terms[0].second, Matrix::identity(Q, 3));

  const FieldSpec f = gf(2);
  const auto v = Hyperplane(g.nonzero_matrix(f, 3)).subspace();
  const auto s = sum_of_products_decompose(v, E(f, 3, 0, 0));
  EXPECT_LE(s.terms.size(), 9u);
  EXPECT_EQ(s.total(f, 3), E(f, 3, 0, 0));
  for (const auto& [a, b] : s.terms) {
    EXPECT_TRUE(v.contains(a));
    EXPECT_TRUE(v.contains(b));
  }

  const auto w1 = first_column_subalgebra(f, 3);
  EXPECT_EQ(code_of([&] { sum_of_products_decompose(w1, E(f, 3, 1, 0)); }), Errc::span_deficient);
}

TEST(SumOfProductsProperty, ReSumsExactly) {
  Gen g(2);
  for (const FieldSpec& f : {gf(2), gf(3), Q}) {
    for (int t = 0; t < 15; ++t) {
      const std::size_t n = 3 + (t % 3 == 0);
      LinearSubspace v = LinearSubspace::full(f, n);
      for (std::size_t k = 0; k < g.below(n - 1); ++k) v = intersect(v, Hyperplane(g.nonzero_matrix(f, n)).subspace());
      if (v.codim() >= n - 1) continue;
      const Matrix m = g.matrix(f, n, n);
      const auto s = sum_of_products_decompose(v, m);
      EXPECT_EQ(s.total(f, n), m);
      for (const auto& [a, b] : s.terms) {
        EXPECT_TRUE(v.contains(a));
        EXPECT_TRUE(v.contains(b));
      }
    }
  }
}

TEST(HyperplanePair, Examples) {
  const Hyperplane sl(Matrix::identity(Q, 3));
  const auto pf = hyperplane_pair_factor(sl, Matrix::identity(Q, 3), {});
  expect_pair(sl, sl, Matrix::identity(Q, 3), pf);
  EXPECT_EQ(pf.right, pf.left.transpose());
  EXPECT_EQ(pf.left, cyclic_permutation(Q, 3));

  expect_pair(sl, sl, E(Q, 3, 0, 0), hyperplane_pair_factor(sl, E(Q, 3, 0, 0), {}));

  const auto zero = hyperplane_pair_factor(sl, Matrix(Q, 3, 3), {});
  EXPECT_TRUE(zero.left.is_zero());
  EXPECT_TRUE(zero.right.is_zero());
  EXPECT_TRUE(zero.verified(Matrix(Q, 3, 3)));
}

TEST(HyperplanePairProperty, AllRanksAndFields) {
  Gen g(3);
  for (const FieldSpec& f : {gf(2), gf(3), gf(5), Q}) {
    for (int t = 0; t < 40; ++t) {
      const std::size_t n = 3 + (t % 8 == 0);
      const Hyperplane h(t % 5 == 0 ? g.of_rank(f, n, 1 + g.below(n)) : g.nonzero_matrix(f, n));
      const Matrix m = g.of_rank(f, n, g.below(n + 1));
      SearchBudget b;
      b.rng_seed = t;
      expect_pair(h, h, m, hyperplane_pair_factor(h, m, b));
    }
  }
}

TEST(TwoHyperplanes, Examples) {
  const FieldSpec f = gf(3);
  const Hyperplane h1(E(f, 3, 0, 1));  // {M(1,0) = 0}
  const Hyperplane h2(E(f, 3, 1, 0));  // {M(0,1) = 0}
  const Matrix id = Matrix::identity(f, 3);
  expect_pair(h1, h2, id, two_hyperplanes_factor(h1, h2, id, {}));
}

TEST(TwoHyperplanesProperty, RandomPairs) {
  Gen g(4);
  for (const FieldSpec& f : {gf(2), gf(3), Q}) {
    for (int t = 0; t < 40; ++t) {
      const std::size_t n = 3 + (t % 10 == 0);
      const Hyperplane h1(g.nonzero_matrix(f, n)), h2(g.nonzero_matrix(f, n));
      const Matrix m = g.of_rank(f, n, g.below(n + 1));
      SearchBudget b;
      b.rng_seed = t;
      expect_pair(h1, h2, m, two_hyperplanes_factor(h1, h2, m, b));
    }
  }
}

TEST(TwoHyperplanes, RejectsSmallN) {
  const Hyperplane h(Matrix::identity(gf(3), 2));
  EXPECT_EQ(code_of([&] { two_hyperplanes_factor(h, h, Matrix::identity(gf(3), 2), {}); }),
            Errc::precondition_violated);
}

TEST(HyperplanePairProperty, ConjugationCovariance) {
  Gen g(5);
  for (int t = 0; t < 20; ++t) {
    const FieldSpec f = gf(5);
    const Hyperplane h(g.nonzero_matrix(f, 3));
    const Matrix m = g.matrix(f, 3, 3);
    const Matrix p = g.invertible(f, 3);
    const auto pf = hyperplane_pair_factor(conjugate(h, p), conjugate(m, p), {});
    ASSERT_TRUE(pf.verified(conjugate(m, p)));
    // Undo the base change: the pulled-back pair factors the original problem.
    const Matrix pi = inverse(p);
    const Matrix b = conjugate(pf.left, pi), c = conjugate(pf.right, pi);
    EXPECT_EQ(b * c, m);
    EXPECT_TRUE(h.contains(b));
    EXPECT_TRUE(h.contains(c));
  }
}

TEST(N2Classify, Examples) {
  const FieldSpec f = gf(3);
  EXPECT_EQ(n2_classify(Hyperplane(Matrix::from_rows(f, {{0, 1}, {1, 0}}))).verdict, N2Verdict::factorable);
  const auto t2 = n2_classify(Hyperplane(E(f, 2, 0, 1)));
  EXPECT_EQ(t2.verdict, N2Verdict::conjugate_T2plus);
  ASSERT_TRUE(t2.conjugator.has_value());
  const auto h0 = n2_classify(Hyperplane(E(f, 2, 0, 0)));
  EXPECT_EQ(h0.verdict, N2Verdict::conjugate_H0);
  ASSERT_TRUE(h0.conjugator.has_value());
  EXPECT_EQ(to_string(N2Verdict::conjugate_H0), "conjugate_H0");
}

TEST(N2Classify, TrichotomyOverAllNormals) {
  for (std::uint64_t p : {2, 3, 5}) {
    const FieldSpec f = gf(p);
    const MatrixCodec codec(f, 2);
    const Hyperplane h0(E(f, 2, 0, 0)), t2(E(f, 2, 0, 1));
    for (const auto& a : normals_up_to_scaling(codec)) {
      const Hyperplane h(a);
      const auto cls = n2_classify(h);
      if (rank(a) == 2) {
        EXPECT_EQ(cls.verdict, N2Verdict::factorable);
        EXPECT_FALSE(cls.conjugator.has_value());
        continue;
      }
      ASSERT_TRUE(cls.conjugator.has_value());
      if (a.trace().is_zero()) {
        EXPECT_EQ(cls.verdict, N2Verdict::conjugate_T2plus);
        EXPECT_EQ(conjugate(h.subspace(), *cls.conjugator), t2.subspace());
      } else {
        EXPECT_EQ(cls.verdict, N2Verdict::conjugate_H0);
        EXPECT_EQ(conjugate(h.subspace(), *cls.conjugator), h0.subspace());
      }
    }
  }
}

TEST(N2PairFactor, Examples) {
  const FieldSpec f = gf(2);
  const Hyperplane h0(E(f, 2, 0, 0));
  const auto r = n2_pair_factor(h0, Matrix::from_rows(f, {{0, 1}, {1, 0}}), {});
  EXPECT_TRUE(std::holds_alternative<Impossible>(r));
  const Hyperplane h(Matrix::from_rows(f, {{0, 1}, {1, 0}}));
  const Matrix m = Matrix::from_rows(f, {{1, 1}, {0, 1}});
  const auto ok = n2_pair_factor(h, m, {});
  ASSERT_TRUE(std::holds_alternative<PairFactorization>(ok));
  expect_pair(h, h, m, std::get<PairFactorization>(ok));
}

TEST(N2PairFactorProperty, AgreesWithOracleProductSet) {
  for (std::uint64_t p : {2, 3}) {
    const FieldSpec f = gf(p);
    const MatrixCodec codec(f, 2);
    for (const auto& a : normals_up_to_scaling(codec)) {
      const Hyperplane h(a);
      const auto codes = enumerate_codes(codec, AffineSubspace::linear(h.subspace()));
      const ElementSet ps = product_set(codec, codes, codes);
      for (std::uint64_t c = 0; c < codec.size(); ++c) {
        const Matrix m = codec.decode(c);
        const auto r = n2_pair_factor(h, m, {});
        if (const auto* pf = std::get_if<PairFactorization>(&r)) {
          expect_pair(h, h, m, *pf);
        } else {
          EXPECT_FALSE(ps.contains(c)) << m.to_string() << " normal " << a.to_string();
        }
      }
    }
  }
}

TEST(N2PairFactor, RationalFactorable) {
  Gen g(6);
  for (int t = 0; t < 30; ++t) {
    Matrix a = g.invertible(Q, 2);
    const Hyperplane h(a);
    const Matrix m = g.of_rank(Q, 2, g.below(3));
    SearchBudget b;
    b.rng_seed = t;
    const auto r = n2_pair_factor(h, m, b);
    ASSERT_TRUE(std::holds_alternative<PairFactorization>(r));
    expect_pair(h, h, m, std::get<PairFactorization>(r));
  }
}

TEST(DegenerateWitness, StandardBlocks) {
  for (const FieldSpec& f : {gf(3), Q}) {
    const auto v = degenerate_left_block(f, 3, 1);
    const auto w = degenerate_right_block(f, 3, 1);
    const auto r = degenerate_pair_witness(v, w);
    ASSERT_TRUE(std::holds_alternative<DegenerateWitness>(r));
    const auto& dw = std::get<DegenerateWitness>(r);
    EXPECT_EQ(dw.p, 1u);
    const Matrix id = Matrix::identity(f, 3);
    EXPECT_EQ(dw.P, id);
    EXPECT_EQ(dw.Q, id);
    EXPECT_EQ(dw.R, id);
  }
}

TEST(DegenerateWitness, FullSpanIsNonDegenerate) {
  Gen g(7);
  const FieldSpec f = gf(5);
  std::size_t seen = 0;
  for (int t = 0; t < 20; ++t) {
    // codim 1 + codim 2 = 3.
    const auto v = Hyperplane(g.nonzero_matrix(f, 3)).subspace();
    const auto w = intersect(Hyperplane(g.nonzero_matrix(f, 3)).subspace(), Hyperplane(g.nonzero_matrix(f, 3)).subspace());
    if (w.codim() != 2) continue;
    const auto r = degenerate_pair_witness(v, w);
    EXPECT_EQ(std::holds_alternative<NonDegenerate>(r), product_span_two(v, w).dim() == 9);
    seen += std::holds_alternative<NonDegenerate>(r);
  }
  EXPECT_GT(seen, 0u);
}

TEST(DegenerateWitnessProperty, RecoversConjugatedBlocks) {
  Gen g(8);
  for (const FieldSpec& f : {gf(3), gf(2), Q}) {
    for (int t = 0; t < 15; ++t) {
      const std::size_t n = 3 + (t % 4 == 0);
      const std::size_t k = 1 + g.below(n - 1);
      const Matrix P = g.invertible(f, n), Qm = g.invertible(f, n), R = g.invertible(f, n);
      const auto v = transform(degenerate_left_block(f, n, k), P, Qm);
      const auto w = transform(degenerate_right_block(f, n, k), inverse(Qm), R);
      const auto r = degenerate_pair_witness(v, w);
      ASSERT_TRUE(std::holds_alternative<DegenerateWitness>(r));
      const auto& dw = std::get<DegenerateWitness>(r);
      EXPECT_EQ(dw.p, k);
      EXPECT_TRUE(subspace_equal_via_basis(transform(degenerate_left_block(f, n, dw.p), dw.P, dw.Q), v));
      EXPECT_TRUE(subspace_equal_via_basis(transform(degenerate_right_block(f, n, dw.p), inverse(dw.Q), dw.R), w));
    }
  }
}

TEST(DegenerateWitness, RejectsWrongCodimSum) {
  const FieldSpec f = gf(3);
  EXPECT_EQ(code_of([&] { degenerate_pair_witness(LinearSubspace::full(f, 3), LinearSubspace::full(f, 3)); }),
            Errc::precondition_violated);
}

TEST(SwapPermutation, SwapsBasisVectors) {
  const Matrix s = swap_permutation(Q, 3, 2);
  EXPECT_EQ(s * s, Matrix::identity(Q, 3));
  EXPECT_EQ(conjugate(E(Q, 3, 0, 0), s), E(Q, 3, 2, 2));
  EXPECT_EQ(swap_permutation(Q, 3, 0), Matrix::identity(Q, 3));
}
