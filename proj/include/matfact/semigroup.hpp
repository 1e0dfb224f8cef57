#pragma once

// Factoring arbitrary matrices as products of elements of an affine
// subspace of codimension < n - 1.

#include <functional>
#include <variant>
#include <vector>

#include "matfact/witness.hpp"

namespace matfact {

struct ChainFactorization {
  std::vector<Matrix> factors;
  /// Base change the top-level solver worked in; identity when none was used.
  Matrix conjugator;

  std::size_t length() const noexcept { return factors.size(); }
};

/// Product re-check plus membership of every factor.
bool verify_chain(const AffineSubspace& v, const Matrix& target, const ChainFactorization& chain);

/// The conjugated affine space P V P^{-1} together with the data the
/// inductive step needs. W is the slice with first column e_0; K(W) its
/// lower-right blocks; L(H) the row parts of the translation elements
/// supported on row 0 off the diagonal.
struct GoodSituation {
  Matrix conjugator;
  AffineSubspace conjugated;
  AffineSubspace slice;
  AffineSubspace k_image;
  LinearSubspace l_h;
};

/// n = 3 and the space is {tr M = a}.
struct Exceptional {
  Scalar a;
};

using SituationResult = std::variant<GoodSituation, Exceptional>;

SituationResult good_situation_transform(const AffineSubspace& v, const SearchBudget& budget);

/// Checks conditions (i) and (ii) for P V P^{-1}; nullopt when either fails.
std::optional<GoodSituation> try_conjugator(const AffineSubspace& v, const Matrix& p);

/// Factors in gs.slice (conjugated coordinates) multiplying to [[1, L], [0, I]].
ChainFactorization unipotent_row_factor(const GoodSituation& gs, const Matrix& l, const SearchBudget& budget);

/// Factors of trace a multiplying to an invertible 3 x 3 M.
ChainFactorization exceptional_factor(const Scalar& a, const Matrix& m, const SearchBudget& budget);

using InvertibleSolver = std::function<std::vector<Matrix>(const Matrix&)>;

/// Singular M through rank n - 1 elements of V; invertible pieces go to `solver`.
ChainFactorization singular_reduce(const AffineSubspace& v, const Matrix& m, const InvertibleSolver& solver,
                                   const SearchBudget& budget);

ChainFactorization semigroup_factor(const AffineSubspace& v, const Matrix& m, const SearchBudget& budget);

}  // namespace matfact
