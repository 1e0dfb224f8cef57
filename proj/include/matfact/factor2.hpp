#pragma once

// Two-factor decompositions: sums of products, products of two hyperplane
// elements, the 2 x 2 classification, and degenerate subspace pairs.

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "matfact/witness.hpp"

namespace matfact {

struct PairFactorization {
  Matrix left;
  Matrix right;
  bool left_member = false;
  bool right_member = false;

  bool verified(const Matrix& target) const { return left_member && right_member && left * right == target; }
};

struct SumOfProducts {
  std::vector<std::pair<Matrix, Matrix>> terms;

  Matrix total(const FieldSpec& field, std::size_t n) const;
};

/// M = sum A_i B_i with every A_i, B_i in V. Errc::span_deficient when M is
/// outside the span of V * V.
SumOfProducts sum_of_products_decompose(const LinearSubspace& v, const Matrix& m);

/// B, C in H with B C = M, n >= 3.
PairFactorization hyperplane_pair_factor(const Hyperplane& h, const Matrix& m, const SearchBudget& budget);

/// B in H1, C in H2 with B C = M, n >= 3.
PairFactorization two_hyperplanes_factor(const Hyperplane& h1, const Hyperplane& h2, const Matrix& m,
                                         const SearchBudget& budget);

enum class N2Verdict { factorable, conjugate_H0, conjugate_T2plus };
std::string to_string(N2Verdict v);

/// For the exceptional verdicts, conjugator S satisfies S H S^{-1} = H0
/// ({M(0,0) = 0}) or T2+ ({M(1,0) = 0}).
struct N2Class {
  N2Verdict verdict;
  std::optional<Matrix> conjugator;
};

N2Class n2_classify(const Hyperplane& h);

struct Impossible {
  std::string reason;
};
using N2PairResult = std::variant<PairFactorization, Impossible>;

N2PairResult n2_pair_factor(const Hyperplane& h, const Matrix& m, const SearchBudget& budget);

/// V = P V_p Q and W = Q^{-1} W_p R.
struct DegenerateWitness {
  std::size_t p;
  Matrix P;
  Matrix Q;
  Matrix R;
};
struct NonDegenerate {};
using DegenerateResult = std::variant<DegenerateWitness, NonDegenerate>;

/// Requires codim V + codim W = n.
DegenerateResult degenerate_pair_witness(const LinearSubspace& v, const LinearSubspace& w);

/// Permutation swapping e_0 and e_r.
Matrix swap_permutation(const FieldSpec& field, std::size_t n, std::size_t r);

}  // namespace matfact
