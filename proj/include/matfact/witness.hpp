#pragma once

// Seeded searches for matrices whose existence is guaranteed by a theorem:
// nonsingular points of large affine subspaces, rank-r points, and
// invertible P in one hyperplane with P^{-1} in another.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>

#include "matfact/subspace.hpp"

namespace matfact {

struct SearchBudget {
  std::uint64_t rng_seed = 0;
  std::size_t max_random_trials = 256;
  bool allow_exhaustive = true;
  /// Exhaustive enumeration engages only when p^dim is at most this.
  std::uint64_t exhaustive_ceiling = 2'000'000;

  /// Throws Errc::invalid_input when max_random_trials is zero.
  void validate() const;
};

/// Deterministic scalar source driven by a SearchBudget seed.
class ScalarSampler {
 public:
  ScalarSampler(const FieldSpec& field, std::uint64_t seed);

  /// Uniform over GF(p); integers in [-range, range] over Q.
  Scalar next();
  std::vector<Scalar> next_vector(std::size_t k);
  Matrix next_matrix(std::size_t rows, std::size_t cols);
  Matrix next_invertible(std::size_t n);
  std::uint64_t next_raw() { return engine_(); }

 private:
  FieldSpec field_;
  std::mt19937_64 engine_;
  std::int64_t range_ = 9;
};

/// p^dim when it is at most `ceiling` (prime fields only).
std::optional<std::uint64_t> enumeration_size(const FieldSpec& field, std::size_t dim, std::uint64_t ceiling);

/// Visits every point of an affine subspace over GF(p) in lexicographic
/// coefficient order until `visit` returns true. Returns the accepted point.
std::optional<Matrix> enumerate_until(const AffineSubspace& a, const std::function<bool(const Matrix&)>& visit);

/// Base point, seeded random points, then (finite fields under the ceiling)
/// exhaustive search for a point satisfying `accept`. No theorem hypothesis
/// is checked. `complete` reports whether the exhaustive pass covered
/// everything.
struct SearchOutcome {
  std::optional<Matrix> found;
  bool complete = false;
};
SearchOutcome search_affine(const AffineSubspace& a, const SearchBudget& budget,
                            const std::function<bool(const Matrix&)>& accept);

/// Nonsingular point of an affine subspace of codim < n.
/// Errc::precondition_violated when codim >= n; Errc::budget_exhausted.
Matrix find_nonsingular_in_affine(const AffineSubspace& a, const SearchBudget& budget);

/// As above without the codimension check; nullopt when nothing was found.
std::optional<Matrix> search_nonsingular(const AffineSubspace& a, const SearchBudget& budget);

/// Point of exact rank r. `min_dimension`, when supplied, is the dimension
/// the backing theorem needs and is checked.
Matrix find_rank_r_in_affine(const AffineSubspace& a, std::size_t r, const SearchBudget& budget,
                             std::optional<std::size_t> min_dimension = std::nullopt);

/// Nonsingular P with tr(A1 P) = 0 and tr(A2 P^{-1}) = 0, n >= 3.
Matrix inverse_pair(const Hyperplane& h1, const Hyperplane& h2, const SearchBudget& budget);

/// E(1,n) + sum_j E(j+1,j) in 1-based terms: the cyclic permutation whose
/// transpose is its inverse; traceless for n >= 2.
Matrix cyclic_permutation(const FieldSpec& field, std::size_t n);

}  // namespace matfact
