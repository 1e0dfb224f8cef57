#include <gtest/gtest.h>

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

}  // namespace

TEST(Matrix, BasicExamples) {
  const FieldSpec f = Q;
  EXPECT_EQ(Matrix::elementary(f, 3, 0, 1) * Matrix::elementary(f, 3, 1, 0), Matrix::elementary(f, 3, 0, 0));
  EXPECT_TRUE(Matrix::identity(gf(3), 3).trace().is_zero());
  EXPECT_EQ(Matrix::rank_block(f, 3, 2), Matrix::identity(f, 3) - Matrix::elementary(f, 3, 2, 2));
}

TEST(Matrix, ShapeAndFieldErrors) {
  EXPECT_EQ(code_of([] { (void)(Matrix(Q, 2, 3) * Matrix(Q, 2, 3)); }), Errc::dimension_mismatch);
  EXPECT_EQ(code_of([] { (void)(Matrix(Q, 2, 2) + Matrix(gf(2), 2, 2)); }), Errc::field_mismatch);
}

TEST(Rref, Examples) {
  const auto id = rref(Matrix::identity(Q, 3));
  EXPECT_EQ(id.reduced, Matrix::identity(Q, 3));
  EXPECT_EQ(id.pivots, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(id.rank, 3u);
  const auto z = rref(Matrix(Q, 2, 3));
  EXPECT_TRUE(z.reduced.is_zero());
  EXPECT_TRUE(z.pivots.empty());
  const auto r = rref(Matrix::from_rows(Q, {{1, 2}, {2, 4}}));
  EXPECT_EQ(r.rank, 1u);
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0}));
}

TEST(Kernel, Examples) {
  const auto k = kernel_basis(Matrix::elementary(Q, 2, 0, 0));
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(k[0], Matrix::from_rows(Q, {{0}, {1}}));
  EXPECT_TRUE(kernel_basis(Matrix::from_rows(Q, {{1, 2}, {3, 4}})).empty());
  const auto k2 = kernel_basis(Matrix::from_rows(gf(2), {{1, 1}, {1, 1}}));
  ASSERT_EQ(k2.size(), 1u);
  EXPECT_EQ(k2[0], Matrix::from_rows(gf(2), {{1}, {1}}));
}

TEST(Solve, Examples) {
  const Matrix c = Matrix::elementary(Q, 2, 1, 0);
  const auto x = solve(c, Matrix::elementary(Q, 2, 0, 0), SolveSide::left);
  ASSERT_TRUE(std::holds_alternative<Matrix>(x));
  EXPECT_EQ(std::get<Matrix>(x) * c, Matrix::elementary(Q, 2, 0, 0));

  const auto none = solve(Matrix::elementary(Q, 2, 0, 0), Matrix::identity(Q, 2), SolveSide::left);
  ASSERT_TRUE(std::holds_alternative<NoSolution>(none));

  const Matrix a = Matrix::from_rows(Q, {{2, 1}, {7, 4}});
  const auto inv = solve(a, Matrix::identity(Q, 2));
  ASSERT_TRUE(std::holds_alternative<Matrix>(inv));
  EXPECT_EQ(std::get<Matrix>(inv), Matrix::from_rows(Q, {{4, -1}, {-7, 2}}));
}

TEST(SolveProperty, SolutionsSubstituteAndCertificatesRefute) {
  Gen g(5);
  for (const FieldSpec& f : {gf(2), gf(5), Q}) {
    for (int t = 0; t < 60; ++t) {
      const std::size_t r = 1 + g.below(4), c = 1 + g.below(4);
      const Matrix a = g.of_rank(f, 4, g.below(5)).block(0, 0, r, c);
      const Matrix b = g.matrix(f, r, 2);
      const auto res = solve(a, b);
      if (const auto* x = std::get_if<Matrix>(&res)) {
        EXPECT_EQ(a * *x, b);
      } else {
        const Matrix& y = std::get<NoSolution>(res).certificate;
        EXPECT_TRUE((y * a).is_zero());
        EXPECT_FALSE((y * b).is_zero());
      }
      const Matrix bl = g.matrix(f, 2, c);
      const auto resl = solve(a, bl, SolveSide::left);
      if (const auto* x = std::get_if<Matrix>(&resl)) {
        EXPECT_EQ(*x * a, bl);
      } else {
        const Matrix& y = std::get<NoSolution>(resl).certificate;
        EXPECT_TRUE((a * y).is_zero());
        EXPECT_FALSE((bl * y).is_zero());
      }
    }
  }
}

TEST(InverseAdjugate, Examples) {
  const FieldSpec f = Q;
  const Matrix p = Matrix::elementary(f, 3, 0, 2) + Matrix::elementary(f, 3, 1, 0) + Matrix::elementary(f, 3, 2, 1);
  EXPECT_EQ(inverse(p), p.transpose());
  for (std::size_t n : {2, 3, 4}) {
    const auto z = inverse_and_adjugate(Matrix(f, n, n));
    EXPECT_TRUE(z.det.is_zero());
    EXPECT_TRUE(z.adj.is_zero());
    EXPECT_FALSE(z.inv.has_value());
  }
  const auto u = inverse_and_adjugate(Matrix::from_rows(f, {{1, 1}, {0, 1}}));
  EXPECT_TRUE(u.det.is_one());
  EXPECT_EQ(*u.inv, Matrix::from_rows(f, {{1, -1}, {0, 1}}));
  // 2 x 2 adjugate is [[d, -b], [-c, a]].
  EXPECT_EQ(adjugate(Matrix::from_rows(f, {{1, 2}, {3, 4}})), Matrix::from_rows(f, {{4, -2}, {-3, 1}}));
}

TEST(InverseAdjugateProperty, AdjugateIdentityAndLeibniz) {
  Gen g(7);
  for (const FieldSpec& f : {gf(5), gf(2), Q}) {
    for (int t = 0; t < 80; ++t) {
      const std::size_t n = 1 + g.below(5);
      // Bias towards singular and corank-1 inputs.
      const Matrix m = t % 3 == 0 ? g.of_rank(f, n, n - 1) : t % 3 == 1 ? g.of_rank(f, n, g.below(n + 1)) : g.matrix(f, n, n);
      const auto ia = inverse_and_adjugate(m);
      const Matrix scaled = Matrix::identity(f, n) * ia.det;
      EXPECT_EQ(ia.adj * m, scaled);
      EXPECT_EQ(m * ia.adj, scaled);
      EXPECT_EQ(ia.det, leibniz_det(m));
      EXPECT_EQ(ia.inv.has_value(), !ia.det.is_zero());
      EXPECT_EQ(is_invertible(m), rank(m) == n);
      if (ia.inv) EXPECT_EQ(*ia.inv * m, Matrix::identity(f, n));
    }
  }
}

TEST(RankProperty, ProductsAndEquivalence) {
  Gen g(9);
  for (int t = 0; t < 100; ++t) {
    const FieldSpec f = t % 2 ? gf(3) : Q;
    const std::size_t n = 2 + g.below(3);
    const Matrix a = g.of_rank(f, n, g.below(n + 1));
    const Matrix b = g.of_rank(f, n, g.below(n + 1));
    EXPECT_LE(rank(a * b), std::min(rank(a), rank(b)));
    EXPECT_EQ(rank(g.invertible(f, n) * a * g.invertible(f, n)), rank(a));
  }
}

TEST(Conjugate, Examples) {
  Gen g(13);
  const Matrix m = g.matrix(Q, 3, 3);
  EXPECT_EQ(conjugate(m, Matrix::identity(Q, 3)), m);
  const Matrix swap = Matrix::from_rows(Q, {{0, 1}, {1, 0}});
  EXPECT_EQ(conjugate(Matrix::elementary(Q, 2, 0, 0), swap), Matrix::elementary(Q, 2, 1, 1));
  for (int t = 0; t < 20; ++t) {
    const Matrix x = g.matrix(gf(5), 3, 3);
    EXPECT_EQ(conjugate(x, g.invertible(gf(5), 3)).trace(), x.trace());
  }
  EXPECT_EQ(code_of([] { conjugate(Matrix::identity(Q, 2), Matrix::elementary(Q, 2, 0, 0)); }),
            Errc::singular_conjugator);
}

TEST(Transvection, Examples) {
  const auto id = transvection_factor(Matrix::identity(Q, 3));
  EXPECT_TRUE(id.transvections.empty());
  EXPECT_EQ(id.dilatation, Matrix::identity(Q, 3));

  const Matrix t = Matrix::identity(Q, 3) + Matrix::elementary(Q, 3, 0, 1);
  const auto tf = transvection_factor(t);
  ASSERT_EQ(tf.transvections.size(), 1u);
  EXPECT_EQ(tf.transvections[0], t);
  EXPECT_EQ(tf.dilatation, Matrix::identity(Q, 3));

  const Matrix d = Matrix::diagonal({Scalar(Q, 3), Scalar::one(Q), Scalar::one(Q)});
  const auto df = transvection_factor(d);
  EXPECT_EQ(product(Q, 3, df.transvections) * df.dilatation, d);
  EXPECT_EQ(df.dilatation, Matrix::diagonal({Scalar::one(Q), Scalar::one(Q), Scalar(Q, 3)}));

  EXPECT_EQ(code_of([] { transvection_factor(Matrix::elementary(Q, 2, 0, 0)); }), Errc::singular_input);
}

TEST(TransvectionProperty, ReassemblesWithBoundedLength) {
  Gen g(17);
  for (const FieldSpec& f : {gf(2), gf(3), gf(7), Q}) {
    for (int t = 0; t < 40; ++t) {
      const std::size_t n = 1 + g.below(5);
      const Matrix m = g.invertible(f, n);
      const auto tf = transvection_factor(m);
      EXPECT_LE(tf.transvections.size(), n * n);
      EXPECT_EQ(product(f, n, tf.transvections) * tf.dilatation, m);
      for (const auto& tr : tf.transvections) {
        const Matrix diff = tr - Matrix::identity(f, n);
        std::size_t nonzero = 0;
        for (std::size_t i = 0; i < n; ++i) {
          EXPECT_TRUE(diff(i, i).is_zero());
          for (std::size_t j = 0; j < n; ++j) nonzero += !diff(i, j).is_zero();
        }
        EXPECT_EQ(nonzero, 1u);
        EXPECT_TRUE(determinant(tr).is_one());
      }
      Matrix expect_d = Matrix::identity(f, n);
      expect_d(n - 1, n - 1) = determinant(m);
      EXPECT_EQ(tf.dilatation, expect_d);
    }
  }
}

TEST(RankNormalFormProperty, Reassembles) {
  Gen g(19);
  for (int t = 0; t < 60; ++t) {
    const FieldSpec f = t % 2 ? gf(2) : Q;
    const std::size_t n = 1 + g.below(5);
    const Matrix m = g.of_rank(f, n, g.below(n + 1));
    const auto rnf = rank_normal_form(m);
    EXPECT_EQ(rnf.rank, rank(m));
    EXPECT_TRUE(is_invertible(rnf.left));
    EXPECT_TRUE(is_invertible(rnf.right));
    EXPECT_EQ(rnf.left * Matrix::rank_block(f, n, rnf.rank) * rnf.right, m);
  }
}

TEST(CompleteToBasis, KeepsLeadingColumns) {
  Gen g(23);
  for (int t = 0; t < 40; ++t) {
    const FieldSpec f = gf(3);
    const std::size_t n = 2 + g.below(4);
    const Matrix base = g.invertible(f, n);
    const std::size_t k = g.below(n + 1);
    std::vector<Matrix> cols;
    for (std::size_t j = 0; j < k; ++j) cols.push_back(base.col(j));
    const Matrix c = complete_to_basis(f, n, cols);
    EXPECT_TRUE(is_invertible(c));
    for (std::size_t j = 0; j < k; ++j) EXPECT_EQ(c.col(j), cols[j]);
  }
}
