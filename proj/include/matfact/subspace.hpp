#pragma once

// Linear and affine subspaces of matrix spaces, the trace form, and the
// spans of products and commutators.

#include <optional>
#include <variant>
#include <vector>

#include "matfact/matrix.hpp"

namespace matfact {

/// Subspace of the rows x cols matrices, stored as the reduced row-echelon
/// form of the row-major vectorized basis. Equal subspaces compare equal.
class LinearSubspace {
 public:
  /// The zero subspace.
  LinearSubspace(const FieldSpec& field, std::size_t rows, std::size_t cols);

  static LinearSubspace span_from(const FieldSpec& field, std::size_t rows, std::size_t cols,
                                  const std::vector<Matrix>& mats);
  /// Square convenience overload.
  static LinearSubspace span_from(const FieldSpec& field, std::size_t n, const std::vector<Matrix>& mats) {
    return span_from(field, n, n, mats);
  }
  static LinearSubspace full(const FieldSpec& field, std::size_t rows, std::size_t cols);
  static LinearSubspace full(const FieldSpec& field, std::size_t n) { return full(field, n, n); }
  /// Trace-zero n x n matrices.
  static LinearSubspace sl(const FieldSpec& field, std::size_t n);

  const FieldSpec& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  /// Size of a square subspace; Errc::dimension_mismatch otherwise.
  std::size_t n() const;
  std::size_t dim() const noexcept { return pivots_.size(); }
  std::size_t ambient_dim() const noexcept { return rows_ * cols_; }
  std::size_t codim() const noexcept { return ambient_dim() - dim(); }

  /// Canonical basis, reshaped back into matrices.
  std::vector<Matrix> basis() const;
  const Matrix& echelon() const noexcept { return echelon_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  bool contains(const Matrix& m) const;
  /// Coefficients of m on basis(), when m lies in the subspace.
  std::optional<std::vector<Scalar>> coordinates(const Matrix& m) const;
  /// m minus its component along the pivot coordinates; zero iff m is a member.
  Matrix reduce(const Matrix& m) const;
  Matrix combine(const std::vector<Scalar>& coefficients) const;

  bool includes(const LinearSubspace& other) const;

  friend bool operator==(const LinearSubspace& a, const LinearSubspace& b);

 private:
  LinearSubspace(const FieldSpec& field, std::size_t rows, std::size_t cols, Matrix echelon,
                 std::vector<std::size_t> pivots);
  void require_member_shape(const Matrix& m) const;

  FieldSpec field_;
  std::size_t rows_;
  std::size_t cols_;
  Matrix echelon_;
  std::vector<std::size_t> pivots_;
};

LinearSubspace sum(const LinearSubspace& u, const LinearSubspace& v);
LinearSubspace intersect(const LinearSubspace& u, const LinearSubspace& v);
/// {x : <x, v> = 0 for all v in V} under the entrywise dot product.
LinearSubspace annihilator(const LinearSubspace& v);
/// Orthogonal for the trace form b(A, B) = tr(AB).
LinearSubspace ortho_complement(const LinearSubspace& v);
/// Span of {B C : B in V, C in W}, computed on basis pairs.
LinearSubspace product_span_two(const LinearSubspace& v, const LinearSubspace& w);
/// Span of {AB - BA : A, B in V}, computed on basis pairs.
LinearSubspace commutator_span(const LinearSubspace& v);
/// Image of V under X -> left * X * right.
LinearSubspace transform(const LinearSubspace& v, const Matrix& left, const Matrix& right);
/// Image under conjugation X -> P X P^{-1}.
LinearSubspace conjugate(const LinearSubspace& v, const Matrix& p);
/// Matrices supported on a single row / column.
LinearSubspace row_support(const FieldSpec& field, std::size_t rows, std::size_t cols, std::size_t r);
LinearSubspace column_support(const FieldSpec& field, std::size_t rows, std::size_t cols, std::size_t c);

/// base + translation. The stored base is reduced against the translation so
/// equal affine subspaces compare equal.
class AffineSubspace {
 public:
  AffineSubspace(Matrix base, LinearSubspace translation);
  static AffineSubspace linear(const LinearSubspace& v);

  const Matrix& base() const noexcept { return base_; }
  const LinearSubspace& translation() const noexcept { return translation_; }
  const FieldSpec& field() const noexcept { return translation_.field(); }
  std::size_t rows() const noexcept { return translation_.rows(); }
  std::size_t cols() const noexcept { return translation_.cols(); }
  std::size_t n() const { return translation_.n(); }
  std::size_t dim() const noexcept { return translation_.dim(); }
  std::size_t codim() const noexcept { return translation_.codim(); }

  bool contains(const Matrix& m) const;
  Matrix point(const std::vector<Scalar>& coefficients) const;

  friend bool operator==(const AffineSubspace&, const AffineSubspace&) = default;

 private:
  Matrix base_;
  LinearSubspace translation_;
};

std::optional<AffineSubspace> intersect_affine(const AffineSubspace& a, const AffineSubspace& b);
/// P A P^{-1}.
AffineSubspace conjugate(const AffineSubspace& a, const Matrix& p);

/// {M : tr(A M) = 0} for a nonzero normal A.
class Hyperplane {
 public:
  explicit Hyperplane(Matrix normal);

  const Matrix& normal() const noexcept { return normal_; }
  const FieldSpec& field() const noexcept { return normal_.field(); }
  std::size_t n() const noexcept { return normal_.rows(); }
  const LinearSubspace& subspace() const noexcept { return subspace_; }

  Scalar pairing(const Matrix& m) const;
  bool contains(const Matrix& m) const { return pairing(m).is_zero(); }

 private:
  Matrix normal_;
  LinearSubspace subspace_;
};

/// The hyperplane whose subspace view is h (dim h must be n^2 - 1).
Hyperplane hyperplane_from_subspace(const LinearSubspace& h);
/// P H P^{-1}: normal P A P^{-1}.
Hyperplane conjugate(const Hyperplane& h, const Matrix& p);

struct TranslationContained {};
using HyperplaneMeet = std::variant<Matrix, TranslationContained>;

/// A point of F meet G, or a certificate that G's translation lies in F while
/// the base does not.
HyperplaneMeet affine_meet_hyperplane(const Hyperplane& f, const AffineSubspace& g);

/// The first-column-supported-on-e_1 subalgebra (codim n - 1).
LinearSubspace first_column_subalgebra(const FieldSpec& field, std::size_t n);
/// Blocks [[0, L], [M, N]] with the first k entries of the top row zero (codim k).
LinearSubspace degenerate_left_block(const FieldSpec& field, std::size_t n, std::size_t k);
/// Blocks [[C, A], [0, B]] with the first column supported on its first k entries (codim n - k).
LinearSubspace degenerate_right_block(const FieldSpec& field, std::size_t n, std::size_t k);

}  // namespace matfact
