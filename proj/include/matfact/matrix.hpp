#pragma once

// Dense exact matrices. Indices are 0-based throughout; E(i, j) in the
// docs below refers to elementary(field, n, i, j).

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "matfact/exactfield.hpp"

namespace matfact {

class Matrix {
 public:
  Matrix(const FieldSpec& field, std::size_t rows, std::size_t cols);
  Matrix(const FieldSpec& field, std::size_t rows, std::size_t cols, std::vector<Scalar> entries);

  /// Builds a matrix from integer rows, e.g. from_rows(f, {{1, 2}, {3, 4}}).
  static Matrix from_rows(const FieldSpec& field, std::initializer_list<std::initializer_list<std::int64_t>> rows);
  static Matrix zero(const FieldSpec& field, std::size_t rows, std::size_t cols) { return Matrix(field, rows, cols); }
  static Matrix identity(const FieldSpec& field, std::size_t n);
  /// Square elementary matrix with a single 1 at (i, j).
  static Matrix elementary(const FieldSpec& field, std::size_t n, std::size_t i, std::size_t j);
  static Matrix elementary(const FieldSpec& field, std::size_t rows, std::size_t cols, std::size_t i, std::size_t j);
  /// diag(I_r, 0).
  static Matrix rank_block(const FieldSpec& field, std::size_t n, std::size_t r);
  static Matrix diagonal(const std::vector<Scalar>& diag);

  const FieldSpec& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool is_zero() const;

  const Scalar& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  Scalar& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const std::vector<Scalar>& entries() const noexcept { return entries_; }

  Matrix transpose() const;
  Scalar trace() const;
  Matrix row(std::size_t r) const;
  Matrix col(std::size_t c) const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& src);

  /// Row-major flattening into a 1 x (rows*cols) matrix, and its inverse.
  Matrix vectorize() const;
  Matrix reshape(std::size_t rows, std::size_t cols) const;

  std::string to_string() const;

  Matrix operator-() const;
  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(const Scalar& s);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Scalar& s) { return a *= s; }
  friend Matrix operator*(const Scalar& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  FieldSpec field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> entries_;
};

/// Product of a list of square matrices, left to right; identity when empty.
Matrix product(const FieldSpec& field, std::size_t n, const std::vector<Matrix>& factors);

void require_same_shape(const Matrix& a, const Matrix& b);
void require_same_field(const FieldSpec& a, const FieldSpec& b);

struct RrefResult {
  Matrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

/// Reduced row-echelon form with first-nonzero pivoting.
RrefResult rref(const Matrix& m);

/// As rref, plus an invertible `transform` with transform * m == reduced.
struct RrefWithTransform {
  RrefResult result;
  Matrix transform;
};
RrefWithTransform rref_with_transform(const Matrix& m);

std::size_t rank(const Matrix& m);

/// Basis of {x : m x = 0} as column vectors, one per free column.
std::vector<Matrix> kernel_basis(const Matrix& m);

/// Which side the unknown multiplies from.
enum class SolveSide {
  right,  ///< A X = B
  left,   ///< X A = B
};

/// Inconsistency certificate. For SolveSide::right it is a row y with
/// y A = 0 and y B != 0; for SolveSide::left a column y with A y = 0 and
/// B y != 0.
struct NoSolution {
  Matrix certificate;
};

using SolveResult = std::variant<Matrix, NoSolution>;

/// One exact solution (free variables set to zero) or a certificate.
SolveResult solve(const Matrix& a, const Matrix& b, SolveSide side = SolveSide::right);

Scalar determinant(const Matrix& m);

struct InverseAdjugate {
  Scalar det;
  Matrix adj;
  std::optional<Matrix> inv;
};

/// Cofactor expansion for n <= 3, elimination beyond.
InverseAdjugate inverse_and_adjugate(const Matrix& m);
Matrix adjugate(const Matrix& m);
/// Throws Errc::singular_input.
Matrix inverse(const Matrix& m);
bool is_invertible(const Matrix& m);

/// P M P^{-1}; Errc::singular_conjugator when P is singular.
Matrix conjugate(const Matrix& m, const Matrix& p);

struct TransvectionFactorization {
  std::vector<Matrix> transvections;  ///< each I + lambda E(i, j), i != j
  Matrix dilatation;                  ///< diag(1, ..., 1, det m)
};

/// m == T_1 ... T_k D with k <= n^2. Errc::singular_input for singular m.
TransvectionFactorization transvection_factor(const Matrix& m);

/// Rank normal form: m == left * rank_block(r) * right with both invertible.
struct RankNormalForm {
  std::size_t rank;
  Matrix left;
  Matrix right;
};
RankNormalForm rank_normal_form(const Matrix& m);

/// Invertible matrix whose first `vectors.size()` columns are the given
/// independent column vectors, completed with standard basis vectors.
Matrix complete_to_basis(const FieldSpec& field, std::size_t n, const std::vector<Matrix>& columns);

/// Permutation matrix sending e_k to e_{images[k]}.
Matrix permutation_matrix(const FieldSpec& field, const std::vector<std::size_t>& images);

}  // namespace matfact
