#pragma once

// Hand-rolled generators and small independent reference computations.

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "matfact/subspace.hpp"

namespace mft {

using namespace matfact;

inline FieldSpec gf(std::uint64_t p) { return FieldSpec::prime(p); }
inline const FieldSpec Q = FieldSpec::rationals();

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t k) { return rng_() % k; }

  Scalar scalar(const FieldSpec& f) {
    if (f.is_finite()) return Scalar(f, static_cast<std::int64_t>(below(f.p())));
    const auto num = static_cast<std::int64_t>(below(41)) - 20;
    const auto den = static_cast<std::int64_t>(below(6)) + 1;
    return Scalar(f, mpq_class(num, den));
  }

  Scalar nonzero(const FieldSpec& f) {
    for (;;) {
      Scalar s = scalar(f);
      if (!s.is_zero()) return s;
    }
  }

  Matrix matrix(const FieldSpec& f, std::size_t r, std::size_t c) {
    std::vector<Scalar> es;
    for (std::size_t k = 0; k < r * c; ++k) es.push_back(scalar(f));
    return Matrix(f, r, c, es);
  }

  Matrix nonzero_matrix(const FieldSpec& f, std::size_t n) {
    for (;;) {
      Matrix m = matrix(f, n, n);
      if (!m.is_zero()) return m;
    }
  }

  Matrix invertible(const FieldSpec& f, std::size_t n) {
    for (;;) {
      Matrix m = matrix(f, n, n);
      if (is_invertible(m)) return m;
    }
  }

  /// Product of rank-r factors: a random matrix of rank exactly r.
  Matrix of_rank(const FieldSpec& f, std::size_t n, std::size_t r) {
    return invertible(f, n) * Matrix::rank_block(f, n, r) * invertible(f, n);
  }

  LinearSubspace subspace(const FieldSpec& f, std::size_t n, std::size_t gens) {
    std::vector<Matrix> ms;
    for (std::size_t k = 0; k < gens; ++k) ms.push_back(matrix(f, n, n));
    return LinearSubspace::span_from(f, n, ms);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Leibniz expansion; independent of elimination.
inline Scalar leibniz_det(const Matrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Scalar total = Scalar::zero(m.field());
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    }
    Scalar term = Scalar::one(m.field());
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    total += inversions % 2 ? -term : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// sum_{i,j} a(i,j) b(j,i), computed entrywise.
inline Scalar trace_form(const Matrix& a, const Matrix& b) {
  Scalar s = Scalar::zero(a.field());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * b(j, i);
  }
  return s;
}

inline Matrix m3(const FieldSpec& f, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  return Matrix::from_rows(f, rows);
}

}  // namespace mft
