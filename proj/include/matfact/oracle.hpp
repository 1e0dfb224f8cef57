#pragma once

// Brute-force ground truth over small prime fields. Matrices are packed into
// integer codes (base-p digits, row-major, entry (0,0) least significant).

#include <cstdint>
#include <vector>

#include "matfact/subspace.hpp"

namespace matfact {

inline constexpr std::uint64_t default_oracle_ceiling = 2'000'000;

class MatrixCodec {
 public:
  /// Errc::infinite_field over Q; Errc::too_large when p^(n*n) exceeds `ceiling`.
  MatrixCodec(const FieldSpec& field, std::size_t n, std::uint64_t ceiling = default_oracle_ceiling);

  const FieldSpec& field() const noexcept { return field_; }
  std::size_t n() const noexcept { return n_; }
  /// Number of n x n matrices, p^(n*n).
  std::uint64_t size() const noexcept { return size_; }

  std::uint64_t encode(const Matrix& m) const;
  Matrix decode(std::uint64_t code) const;
  std::uint64_t multiply(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t identity() const;

 private:
  std::uint64_t multiply_direct(std::uint64_t a, std::uint64_t b) const;

  FieldSpec field_;
  std::size_t n_;
  std::uint64_t p_;
  std::uint64_t size_;
  std::vector<std::uint32_t> table_;
};

/// All points of an affine subspace. Errc::too_large when p^dim exceeds the
/// ceiling; Errc::infinite_field over Q.
std::vector<Matrix> enumerate_affine(const AffineSubspace& a, std::uint64_t ceiling = default_oracle_ceiling);
std::vector<std::uint64_t> enumerate_codes(const MatrixCodec& codec, const AffineSubspace& a,
                                           std::uint64_t ceiling = default_oracle_ceiling);

/// Bitmap over all codes.
class ElementSet {
 public:
  explicit ElementSet(std::uint64_t universe) : bits_(universe, false) {}

  bool insert(std::uint64_t code);
  bool contains(std::uint64_t code) const { return bits_[code]; }
  std::uint64_t count() const noexcept { return count_; }
  std::uint64_t universe() const noexcept { return bits_.size(); }
  bool full() const noexcept { return count_ == bits_.size(); }
  std::vector<std::uint64_t> elements() const;

 private:
  std::vector<bool> bits_;
  std::uint64_t count_ = 0;
};

/// {a b : a in left, b in right}; stops early once every matrix is reached.
ElementSet product_set(const MatrixCodec& codec, const std::vector<std::uint64_t>& left,
                       const std::vector<std::uint64_t>& right);

/// Span of a set of matrices given by codes.
LinearSubspace span_of(const MatrixCodec& codec, const ElementSet& set);

/// Incremental row echelon basis of residue vectors mod p.
class ResidueSpan {
 public:
  ResidueSpan(std::uint64_t p, std::size_t dim) : p_(p), dim_(dim) {}

  /// Adds a vector; true when the rank grew.
  bool insert(std::vector<std::uint64_t> v);
  std::size_t rank() const noexcept { return rows_.size(); }
  bool full() const noexcept { return rows_.size() == dim_; }

 private:
  std::uint64_t p_;
  std::size_t dim_;
  std::vector<std::vector<std::uint64_t>> rows_;
  std::vector<std::size_t> pivots_;
};

/// Digits of a code, entry (0,0) first.
std::vector<std::uint64_t> code_digits(const MatrixCodec& codec, std::uint64_t code);

/// Dimension of span{a b : a in left, b in right}; scans pairs until the span is full.
std::size_t product_span_rank(const MatrixCodec& codec, const std::vector<std::uint64_t>& left,
                              const std::vector<std::uint64_t>& right);

struct ClosureResult {
  ElementSet elements;
  /// Longest shortest word needed, i.e. the BFS depth at saturation.
  std::size_t saturated_at = 0;
  /// For each reached code: the predecessor code and the generator appended
  /// (predecessor is -1 for generators themselves).
  std::vector<std::int64_t> parent;
  std::vector<std::int64_t> last_generator;

  /// Shortest generator word whose product is `code`.
  std::vector<std::uint64_t> word(std::uint64_t code) const;
};

/// Multiplicative semigroup generated by `generators`, by breadth-first search.
ClosureResult closure(const MatrixCodec& codec, const std::vector<std::uint64_t>& generators);

/// Nonzero n x n normals whose first nonzero entry is 1, in code order.
std::vector<Matrix> normals_up_to_scaling(const MatrixCodec& codec);

}  // namespace matfact
