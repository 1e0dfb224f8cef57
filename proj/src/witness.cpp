#include "matfact/witness.hpp"

#include <algorithm>
#include <set>

namespace matfact {

void SearchBudget::validate() const {
  if (max_random_trials == 0) raise(Errc::invalid_input, "max_random_trials must be at least 1");
}

ScalarSampler::ScalarSampler(const FieldSpec& field, std::uint64_t seed) : field_(field), engine_(seed) {}

Scalar ScalarSampler::next() {
  // Plain modulo keeps sequences identical across standard libraries.
  if (field_.is_finite()) return Scalar(field_, static_cast<std::int64_t>(engine_() % field_.p()));
  const auto span = static_cast<std::uint64_t>(2 * range_ + 1);
  return Scalar(field_, static_cast<std::int64_t>(engine_() % span) - range_);
}

std::vector<Scalar> ScalarSampler::next_vector(std::size_t k) {
  std::vector<Scalar> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(next());
  return out;
}

Matrix ScalarSampler::next_matrix(std::size_t rows, std::size_t cols) {
  return Matrix(field_, rows, cols, next_vector(rows * cols));
}

Matrix ScalarSampler::next_invertible(std::size_t n) {
  for (;;) {
    Matrix m = next_matrix(n, n);
    if (is_invertible(m)) return m;
  }
}

std::optional<std::uint64_t> enumeration_size(const FieldSpec& field, std::size_t dim, std::uint64_t ceiling) {
  if (!field.is_finite()) return std::nullopt;
  std::uint64_t count = 1;
  for (std::size_t k = 0; k < dim; ++k) {
    if (count > ceiling / field.p()) return std::nullopt;
    count *= field.p();
  }
  return count <= ceiling ? std::optional<std::uint64_t>(count) : std::nullopt;
}

std::optional<Matrix> enumerate_until(const AffineSubspace& a, const std::function<bool(const Matrix&)>& visit) {
  const FieldSpec& f = a.field();
  if (!f.is_finite()) raise(Errc::infinite_field, "cannot enumerate an affine subspace over Q");
  const auto basis = a.translation().basis();
  std::vector<std::uint64_t> digits(basis.size(), 0);
  Matrix point = a.base();
  // Odometer: bumping digit k adds basis[k]; after p bumps it wraps to zero
  // and the accumulated p * basis[k] vanishes.
  for (;;) {
    if (visit(point)) return point;
    std::size_t k = 0;
    for (; k < digits.size(); ++k) {
      point += basis[k];
      if (++digits[k] < f.p()) break;
      digits[k] = 0;
    }
    if (k == digits.size()) return std::nullopt;
  }
}

SearchOutcome search_affine(const AffineSubspace& a, const SearchBudget& budget,
                            const std::function<bool(const Matrix&)>& accept) {
  budget.validate();
  if (accept(a.base())) return SearchOutcome{a.base(), a.dim() == 0};
  if (a.dim() == 0) return SearchOutcome{std::nullopt, true};
  ScalarSampler sampler(a.field(), budget.rng_seed);
  for (std::size_t t = 0; t < budget.max_random_trials; ++t) {
    Matrix m = a.point(sampler.next_vector(a.dim()));
    if (accept(m)) return SearchOutcome{std::move(m), false};
  }
  if (budget.allow_exhaustive && enumeration_size(a.field(), a.dim(), budget.exhaustive_ceiling)) {
    return SearchOutcome{enumerate_until(a, accept), true};
  }
  return SearchOutcome{std::nullopt, false};
}

std::optional<Matrix> search_nonsingular(const AffineSubspace& a, const SearchBudget& budget) {
  if (!a.translation().is_square()) raise(Errc::dimension_mismatch, "nonsingular search needs square matrices");
  const auto accept = [](const Matrix& m) { return is_invertible(m); };
  SearchOutcome out = search_affine(a, budget, accept);
  if (out.found || out.complete || a.field().is_finite()) return out.found;
  // Over Q, det(base + t B) is a polynomial of degree <= n in t: n + 1 sample
  // values of t decide whether a pencil direction helps.
  const std::size_t n = a.n();
  for (const auto& b : a.translation().basis()) {
    for (std::size_t t = 1; t <= n + 1; ++t) {
      Matrix m = a.base() + b * Scalar(a.field(), static_cast<std::int64_t>(t));
      if (accept(m)) return m;
    }
  }
  return std::nullopt;
}

Matrix find_nonsingular_in_affine(const AffineSubspace& a, const SearchBudget& budget) {
  const std::size_t n = a.n();
  if (a.codim() >= n) {
    raise(Errc::precondition_violated,
          "codim " + std::to_string(a.codim()) + " is not below n = " + std::to_string(n));
  }
  if (auto m = search_nonsingular(a, budget)) return std::move(*m);
  if (a.field().is_finite() && budget.allow_exhaustive &&
      enumeration_size(a.field(), a.dim(), budget.exhaustive_ceiling)) {
    raise(Errc::internal_contradiction, "exhaustive search found no nonsingular point despite codim < n");
  }
  raise(Errc::budget_exhausted, "no nonsingular point found");
}

Matrix find_rank_r_in_affine(const AffineSubspace& a, std::size_t r, const SearchBudget& budget,
                             std::optional<std::size_t> min_dimension) {
  if (r > std::min(a.rows(), a.cols())) raise(Errc::precondition_violated, "rank exceeds matrix size");
  if (min_dimension && a.dim() < *min_dimension) {
    raise(Errc::precondition_violated, "affine subspace has dim " + std::to_string(a.dim()) + " < " +
                                           std::to_string(*min_dimension));
  }
  if (a.dim() == 0 && rank(a.base()) != r) {
    raise(Errc::precondition_violated, "single point does not have rank " + std::to_string(r));
  }
  SearchOutcome out = search_affine(a, budget, [r](const Matrix& m) { return rank(m) == r; });
  if (out.found) return std::move(*out.found);
  if (out.complete) raise(Errc::precondition_violated, "no element of rank " + std::to_string(r) + " exists");
  raise(Errc::budget_exhausted, "no rank " + std::to_string(r) + " point found");
}

Matrix cyclic_permutation(const FieldSpec& field, std::size_t n) {
  std::vector<std::size_t> images(n);
  for (std::size_t j = 0; j < n; ++j) images[j] = (j + 1) % n;
  return permutation_matrix(field, images);
}

namespace {

struct PairCheck {
  const Hyperplane& h1;
  const Hyperplane& h2;

  bool operator()(const Matrix& p) const {
    if (!h1.contains(p)) return false;
    const auto ia = inverse_and_adjugate(p);
    return ia.inv && h2.contains(*ia.inv);
  }
};

// Integer divisors of |v| up to a size cap; empty when too large to factor.
std::vector<mpz_class> small_divisors(mpz_class v) {
  v = abs(v);
  std::vector<mpz_class> out;
  if (v == 0 || v > mpz_class("1000000000000")) return out;
  const unsigned long long x = v.get_ui();
  for (unsigned long long d = 1; d * d <= x; ++d) {
    if (x % d == 0) {
      out.emplace_back(static_cast<unsigned long>(d));
      if (d * d != x) out.emplace_back(static_cast<unsigned long>(x / d));
    }
  }
  return out;
}

// Rational roots of sum coeffs[k] t^k.
std::vector<mpq_class> rational_roots(std::vector<mpq_class> coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  std::vector<mpq_class> roots;
  if (coeffs.size() <= 1) return roots;
  std::size_t shift = 0;
  while (coeffs[shift] == 0) ++shift;
  if (shift > 0) roots.emplace_back(0);
  mpz_class lcm_den = 1;
  for (const auto& c : coeffs) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> ints;
  for (std::size_t k = shift; k < coeffs.size(); ++k) ints.push_back(mpz_class(coeffs[k] * lcm_den));
  if (ints.size() <= 1) return roots;
  const auto eval = [&](const mpq_class& t) {
    mpq_class acc = 0;
    for (std::size_t k = ints.size(); k-- > 0;) acc = acc * t + mpq_class(ints[k]);
    return acc;
  };
  std::set<mpq_class> seen;
  for (const auto& num : small_divisors(ints.front())) {
    for (const auto& den : small_divisors(ints.back())) {
      for (int sign : {1, -1}) {
        mpq_class t(num * sign, den);
        t.canonicalize();
        if (seen.insert(t).second && eval(t) == 0) roots.push_back(t);
      }
    }
  }
  return roots;
}

std::optional<Matrix> pencil_refine(const Matrix& p0, const Hyperplane& h1, const Hyperplane& h2) {
  const FieldSpec& f = p0.field();
  const std::size_t n = p0.rows();
  const PairCheck check{h1, h2};
  for (const auto& d : h1.subspace().basis()) {
    if (f.is_finite()) {
      for (std::uint64_t t = 1; t < f.p(); ++t) {
        Matrix x = p0 + d * Scalar(f, static_cast<std::int64_t>(t));
        if (check(x)) return x;
      }
      continue;
    }
    // g(t) = tr(A2 adj(P0 + t D)) has degree <= n - 1: interpolate at
    // t = 0..n-1, then look for rational roots.
    Matrix vander(f, n, n), values(f, n, 1);
    for (std::size_t i = 0; i < n; ++i) {
      const Scalar t(f, static_cast<std::int64_t>(i));
      Scalar power = Scalar::one(f);
      for (std::size_t k = 0; k < n; ++k) {
        vander(i, k) = power;
        power *= t;
      }
      values(i, 0) = h2.pairing(adjugate(p0 + d * t));
    }
    const Matrix coeffs = std::get<Matrix>(solve(vander, values));
    std::vector<mpq_class> c;
    for (std::size_t k = 0; k < n; ++k) c.push_back(coeffs(k, 0).rational());
    for (const auto& root : rational_roots(c)) {
      Matrix x = p0 + d * Scalar(f, root);
      if (check(x)) return x;
    }
  }
  return std::nullopt;
}

// Candidates f(X) = [[1, X], [0, Q]] after a base change S; both trace
// conditions are linear in X.
std::optional<Matrix> block_family(const Hyperplane& h1, const Hyperplane& h2, const Matrix& s, const Matrix& q) {
  const FieldSpec& f = q.field();
  const std::size_t n = h1.n();
  const std::size_t m = n - 1;
  const Matrix s_inv = inverse(s);
  const Matrix a1 = s * h1.normal() * s_inv;
  const Matrix a2 = s * h2.normal() * s_inv;
  const Matrix q_inv = inverse(q);
  const Scalar alpha = a1(0, 0), beta = a2(0, 0);
  const Matrix c1 = a1.block(1, 0, m, 1), c2 = a2.block(1, 0, m, 1);
  const Matrix m1 = a1.block(1, 1, m, m), m2 = a2.block(1, 1, m, m);
  // X c1 = -alpha - tr(M1 Q);  X (Q^{-1} c2) = beta + tr(M2 Q^{-1})
  Matrix g(f, m, 2);
  g.set_block(0, 0, c1);
  g.set_block(0, 1, q_inv * c2);
  Matrix rhs(f, 1, 2);
  rhs(0, 0) = -alpha - (m1 * q).trace();
  rhs(0, 1) = beta + (m2 * q_inv).trace();
  const SolveResult sol = solve(g, rhs, SolveSide::left);
  const auto* x = std::get_if<Matrix>(&sol);
  if (!x) return std::nullopt;
  Matrix fx = Matrix::identity(f, n);
  fx.set_block(0, 1, *x);
  fx.set_block(1, 1, q);
  Matrix p = s_inv * fx * s;
  if (!PairCheck{h1, h2}(p)) return std::nullopt;
  return p;
}

}  // namespace

Matrix inverse_pair(const Hyperplane& h1, const Hyperplane& h2, const SearchBudget& budget) {
  budget.validate();
  require_same_shape(h1.normal(), h2.normal());
  const FieldSpec& f = h1.field();
  const std::size_t n = h1.n();
  if (n < 3) raise(Errc::precondition_violated, "inverse_pair needs n >= 3");
  const PairCheck check{h1, h2};

  // Structured candidates first: I, then the cyclic permutation pair.
  const Matrix cyc = cyclic_permutation(f, n);
  for (const Matrix& c : {Matrix::identity(f, n), cyc.transpose(), cyc}) {
    if (check(c)) return c;
  }

  const AffineSubspace h1_space = AffineSubspace::linear(h1.subspace());
  SearchBudget small = budget;
  small.allow_exhaustive = false;
  if (auto p0 = search_nonsingular(h1_space, small)) {
    if (check(*p0)) return std::move(*p0);
    if (auto p = pencil_refine(*p0, h1, h2)) return std::move(*p);
  }

  ScalarSampler sampler(f, budget.rng_seed ^ 0x9e3779b97f4a7c15ULL);
  for (std::size_t t = 0; t < budget.max_random_trials; ++t) {
    const Matrix s = t == 0 ? Matrix::identity(f, n) : sampler.next_invertible(n);
    const Matrix q = sampler.next_invertible(n - 1);
    if (auto p = block_family(h1, h2, s, q)) return std::move(*p);
  }

  if (budget.allow_exhaustive && enumeration_size(f, h1_space.dim(), budget.exhaustive_ceiling)) {
    if (auto p = enumerate_until(h1_space, check)) return std::move(*p);
    raise(Errc::internal_contradiction, "no invertible P in H1 with inverse in H2");
  }
  raise(Errc::budget_exhausted, "inverse_pair search exhausted its budget");
}

}  // namespace matfact
