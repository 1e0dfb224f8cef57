#include <gtest/gtest.h>

#include "matfact/witness.hpp"
#include "support.hpp"

using namespace mft;

namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return Errc::invalid_input;
}

AffineSubspace random_affine(Gen& g, const FieldSpec& f, std::size_t n, std::size_t codim) {
  for (;;) {
    const auto normals = g.subspace(f, n, codim);
    if (normals.dim() == codim) return AffineSubspace(g.matrix(f, n, n), ortho_complement(normals));
  }
}

}  // namespace

TEST(SearchBudget, RejectsZeroTrials) {
  SearchBudget b;
  b.max_random_trials = 0;
  EXPECT_EQ(code_of([&] { b.validate(); }), Errc::invalid_input);
}

TEST(ScalarSampler, DeterministicPerSeed) {
  ScalarSampler a(gf(7), 42), b(gf(7), 42), c(Q, 1);
  EXPECT_EQ(a.next_matrix(3, 3), b.next_matrix(3, 3));
  for (int k = 0; k < 50; ++k) {
    const Scalar s = c.next();
    EXPECT_LE(abs(s.rational()), 9);
    EXPECT_EQ(s.rational().get_den(), 1);
  }
}

TEST(EnumerationSize, Ceiling) {
  EXPECT_EQ(enumeration_size(gf(2), 9, 1000), 512u);
  EXPECT_FALSE(enumeration_size(gf(2), 10, 1000).has_value());
  EXPECT_FALSE(enumeration_size(Q, 1, 1000).has_value());
}

TEST(EnumerateUntil, VisitsEveryPointOnce) {
  const FieldSpec f = gf(3);
  const AffineSubspace a(Matrix::identity(f, 2), LinearSubspace::span_from(f, 2, {Matrix::elementary(f, 2, 0, 1), Matrix::elementary(f, 2, 1, 0)}));
  std::vector<Matrix> seen;
  EXPECT_FALSE(enumerate_until(a, [&](const Matrix& m) {
    seen.push_back(m);
    return false;
  }).has_value());
  ASSERT_EQ(seen.size(), 9u);
  for (std::size_t i = 0; i < seen.size(); ++i) {
    EXPECT_TRUE(a.contains(seen[i]));
    for (std::size_t j = 0; j < i; ++j) EXPECT_FALSE(seen[i] == seen[j]);
  }
}

TEST(FindNonsingular, Examples) {
  const FieldSpec f = gf(2);
  const auto sl = LinearSubspace::sl(f, 3);
  const Matrix m = find_nonsingular_in_affine(AffineSubspace::linear(sl), {});
  EXPECT_TRUE(is_invertible(m));
  EXPECT_TRUE(m.trace().is_zero());
  // The strictly upper triangular matrices have codim 6 >= 3.
  std::vector<Matrix> upper;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) upper.push_back(Matrix::elementary(f, 3, i, j));
  }
  EXPECT_EQ(code_of([&] { find_nonsingular_in_affine(AffineSubspace::linear(LinearSubspace::span_from(f, 3, upper)), {}); }),
            Errc::precondition_violated);
}

TEST(FindNonsingularProperty, LargeAffineSpacesHaveUnits) {
  Gen g(3);
  for (const FieldSpec& f : {gf(2), gf(3), gf(5), Q}) {
    for (int t = 0; t < 30; ++t) {
      const std::size_t n = 2 + g.below(3);
      const auto a = random_affine(g, f, n, g.below(n));
      SearchBudget b;
      b.rng_seed = t;
      const Matrix m = find_nonsingular_in_affine(a, b);
      EXPECT_TRUE(a.contains(m));
      EXPECT_TRUE(is_invertible(m));
    }
  }
}

TEST(FindRankR, ExactRank) {
  Gen g(5);
  for (const FieldSpec& f : {gf(2), gf(3)}) {
    for (int t = 0; t < 20; ++t) {
      const auto a = AffineSubspace::linear(LinearSubspace::full(f, 2, 3));
      const std::size_t r = g.below(3);
      SearchBudget b;
      b.rng_seed = t;
      const Matrix m = find_rank_r_in_affine(a, r, b);
      EXPECT_EQ(rank(m), r);
      EXPECT_EQ(m.rows(), 2u);
    }
  }
  // Over Q random points have the generic rank.
  const Matrix m = find_rank_r_in_affine(AffineSubspace::linear(LinearSubspace::full(Q, 3)), 3, {});
  EXPECT_EQ(rank(m), 3u);
}

TEST(FindRankR, Preconditions) {
  const FieldSpec f = gf(2);
  const auto zero = AffineSubspace::linear(LinearSubspace(f, 3, 3));
  EXPECT_EQ(code_of([&] { find_rank_r_in_affine(zero, 1, {}); }), Errc::precondition_violated);
  EXPECT_EQ(code_of([&] { find_rank_r_in_affine(AffineSubspace::linear(LinearSubspace::sl(f, 2)), 1, {}, std::size_t{4}); }),
            Errc::precondition_violated);
  EXPECT_EQ(code_of([&] { find_rank_r_in_affine(zero, 4, {}); }), Errc::precondition_violated);
}

TEST(FindRankR, PrescribedKernel) {
  // Rank-1 C with C e_2 = 0 and zero first row, inside a hyperplane.
  const FieldSpec f = gf(2);
  std::vector<Matrix> gens;
  for (std::size_t i = 1; i < 3; ++i) {
    for (std::size_t j = 0; j < 2; ++j) gens.push_back(Matrix::elementary(f, 3, i, j));
  }
  const auto v = intersect(LinearSubspace::span_from(f, 3, gens), Hyperplane(Matrix::identity(f, 3)).subspace());
  const Matrix c = find_rank_r_in_affine(AffineSubspace::linear(v), 1, {});
  EXPECT_EQ(rank(c), 1u);
  EXPECT_TRUE(c.trace().is_zero());
  EXPECT_TRUE(c.col(2).is_zero());
}

TEST(CyclicPermutation, TracelessWithTransposeInverse) {
  for (std::size_t n : {2, 3, 4, 5}) {
    const Matrix c = cyclic_permutation(Q, n);
    EXPECT_TRUE(c.trace().is_zero());
    EXPECT_EQ(c * c.transpose(), Matrix::identity(Q, n));
  }
}

TEST(InversePair, SlOverRationals) {
  const Hyperplane sl(Matrix::identity(Q, 3));
  const Matrix p = inverse_pair(sl, sl, {});
  EXPECT_TRUE(sl.contains(p));
  EXPECT_TRUE(sl.contains(inverse(p)));
}

TEST(InversePairProperty, SmallPrimesAndRationals) {
  Gen g(7);
  for (const FieldSpec& f : {gf(2), gf(3), gf(5), Q}) {
    for (int t = 0; t < 25; ++t) {
      const std::size_t n = 3 + (t % 5 == 0);
      const Hyperplane h1(g.nonzero_matrix(f, n));
      const Hyperplane h2(g.nonzero_matrix(f, n));
      SearchBudget b;
      b.rng_seed = t;
      const Matrix p = inverse_pair(h1, h2, b);
      ASSERT_TRUE(is_invertible(p));
      EXPECT_TRUE(h1.contains(p));
      EXPECT_TRUE(h2.contains(inverse(p)));
    }
  }
}

TEST(InversePair, RejectsSmallN) {
  const FieldSpec f = gf(3);
  const Hyperplane h(Matrix::identity(f, 2));
  EXPECT_EQ(code_of([&] { inverse_pair(h, h, {}); }), Errc::precondition_violated);
}
