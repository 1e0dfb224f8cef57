#include "matfact/oracle.hpp"

#include "matfact/witness.hpp"

namespace matfact {

MatrixCodec::MatrixCodec(const FieldSpec& field, std::size_t n, std::uint64_t ceiling)
    : field_(field), n_(n), p_(field.p()), size_(0) {
  if (!field.is_finite()) raise(Errc::infinite_field, "oracle needs a prime field");
  const auto size = enumeration_size(field, n * n, ceiling);
  if (!size) raise(Errc::too_large, field.to_string() + " matrices of size " + std::to_string(n) + " exceed the ceiling");
  size_ = *size;
  if (size_ <= 1024) {
    table_.resize(size_ * size_);
    for (std::uint64_t a = 0; a < size_; ++a) {
      for (std::uint64_t b = 0; b < size_; ++b) table_[a * size_ + b] = static_cast<std::uint32_t>(multiply_direct(a, b));
    }
  }
}

std::uint64_t MatrixCodec::encode(const Matrix& m) const {
  if (m.field() != field_ || m.rows() != n_ || m.cols() != n_) raise(Errc::dimension_mismatch, "matrix does not fit the codec");
  std::uint64_t code = 0;
  const auto& es = m.entries();
  for (std::size_t k = es.size(); k-- > 0;) code = code * p_ + es[k].residue();
  return code;
}

Matrix MatrixCodec::decode(std::uint64_t code) const {
  std::vector<Scalar> es;
  es.reserve(n_ * n_);
  for (std::size_t k = 0; k < n_ * n_; ++k) {
    es.emplace_back(field_, static_cast<std::int64_t>(code % p_));
    code /= p_;
  }
  return Matrix(field_, n_, n_, std::move(es));
}

std::uint64_t MatrixCodec::multiply_direct(std::uint64_t a, std::uint64_t b) const {
  const std::size_t nn = n_ * n_;
  std::uint64_t x[64], y[64];
  for (std::size_t k = 0; k < nn; ++k) {
    x[k] = a % p_;
    a /= p_;
    y[k] = b % p_;
    b /= p_;
  }
  std::uint64_t code = 0;
  for (std::size_t k = nn; k-- > 0;) {
    const std::size_t i = k / n_, j = k % n_;
    std::uint64_t acc = 0;
    for (std::size_t t = 0; t < n_; ++t) acc += x[i * n_ + t] * y[t * n_ + j];
    code = code * p_ + acc % p_;
  }
  return code;
}

std::uint64_t MatrixCodec::multiply(std::uint64_t a, std::uint64_t b) const {
  if (!table_.empty()) return table_[a * size_ + b];
  return multiply_direct(a, b);
}

std::uint64_t MatrixCodec::identity() const { return encode(Matrix::identity(field_, n_)); }

std::vector<Matrix> enumerate_affine(const AffineSubspace& a, std::uint64_t ceiling) {
  if (!a.field().is_finite()) raise(Errc::infinite_field, "cannot enumerate over Q");
  if (!enumeration_size(a.field(), a.dim(), ceiling)) raise(Errc::too_large, "affine subspace exceeds the ceiling");
  std::vector<Matrix> out;
  enumerate_until(a, [&out](const Matrix& m) {
    out.push_back(m);
    return false;
  });
  return out;
}

std::vector<std::uint64_t> enumerate_codes(const MatrixCodec& codec, const AffineSubspace& a, std::uint64_t ceiling) {
  require_same_field(codec.field(), a.field());
  if (!enumeration_size(a.field(), a.dim(), ceiling)) raise(Errc::too_large, "affine subspace exceeds the ceiling");
  const FieldSpec& f = a.field();
  const std::uint64_t p = f.p();
  const std::size_t nn = a.rows() * a.cols();
  // Enumerate residue vectors directly; far cheaper than Scalar arithmetic.
  const auto to_digits = [&](const Matrix& m) {
    std::vector<std::uint64_t> d(nn);
    for (std::size_t k = 0; k < nn; ++k) d[k] = m.entries()[k].residue();
    return d;
  };
  std::vector<std::vector<std::uint64_t>> basis;
  for (const auto& b : a.translation().basis()) basis.push_back(to_digits(b));
  std::vector<std::uint64_t> point = to_digits(a.base());
  std::vector<std::uint64_t> counter(basis.size(), 0);
  std::vector<std::uint64_t> out;
  const auto code_of = [&] {
    std::uint64_t c = 0;
    for (std::size_t k = nn; k-- > 0;) c = c * p + point[k];
    return c;
  };
  for (;;) {
    out.push_back(code_of());
    std::size_t k = 0;
    for (; k < counter.size(); ++k) {
      for (std::size_t e = 0; e < nn; ++e) point[e] = (point[e] + basis[k][e]) % p;
      if (++counter[k] < p) break;
      counter[k] = 0;
    }
    if (k == counter.size()) break;
  }
  return out;
}

bool ElementSet::insert(std::uint64_t code) {
  if (bits_[code]) return false;
  bits_[code] = true;
  ++count_;
  return true;
}

std::vector<std::uint64_t> ElementSet::elements() const {
  std::vector<std::uint64_t> out;
  out.reserve(count_);
  for (std::uint64_t c = 0; c < bits_.size(); ++c) {
    if (bits_[c]) out.push_back(c);
  }
  return out;
}

ElementSet product_set(const MatrixCodec& codec, const std::vector<std::uint64_t>& left,
                       const std::vector<std::uint64_t>& right) {
  ElementSet out(codec.size());
  for (const auto a : left) {
    for (const auto b : right) {
      out.insert(codec.multiply(a, b));
      if (out.full()) return out;
    }
  }
  return out;
}

LinearSubspace span_of(const MatrixCodec& codec, const ElementSet& set) {
  const FieldSpec& f = codec.field();
  const std::size_t n = codec.n();
  LinearSubspace acc(f, n, n);
  for (const auto c : set.elements()) {
    Matrix m = codec.decode(c);
    if (acc.contains(m)) continue;
    acc = sum(acc, LinearSubspace::span_from(f, n, {m}));
    if (acc.dim() == n * n) break;
  }
  return acc;
}

namespace {

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  b %= p;
  for (; e; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return r;
}

}  // namespace

bool ResidueSpan::insert(std::vector<std::uint64_t> v) {
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const std::uint64_t c = v[pivots_[k]];
    if (c == 0) continue;
    for (std::size_t e = 0; e < dim_; ++e) v[e] = (v[e] + (p_ - c) * rows_[k][e]) % p_;
  }
  std::size_t piv = 0;
  while (piv < dim_ && v[piv] == 0) ++piv;
  if (piv == dim_) return false;
  const std::uint64_t inv = pow_mod(v[piv], p_ - 2, p_);
  for (auto& x : v) x = x * inv % p_;
  // Keep earlier rows reduced at the new pivot.
  for (auto& row : rows_) {
    const std::uint64_t c = row[piv];
    if (c == 0) continue;
    for (std::size_t e = 0; e < dim_; ++e) row[e] = (row[e] + (p_ - c) * v[e]) % p_;
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(piv);
  return true;
}

std::vector<std::uint64_t> code_digits(const MatrixCodec& codec, std::uint64_t code) {
  const std::uint64_t p = codec.field().p();
  std::vector<std::uint64_t> d(codec.n() * codec.n());
  for (auto& x : d) {
    x = code % p;
    code /= p;
  }
  return d;
}

std::size_t product_span_rank(const MatrixCodec& codec, const std::vector<std::uint64_t>& left,
                              const std::vector<std::uint64_t>& right) {
  ResidueSpan span(codec.field().p(), codec.n() * codec.n());
  for (const auto a : left) {
    for (const auto b : right) {
      span.insert(code_digits(codec, codec.multiply(a, b)));
      if (span.full()) return span.rank();
    }
  }
  return span.rank();
}

std::vector<std::uint64_t> ClosureResult::word(std::uint64_t code) const {
  if (!elements.contains(code)) raise(Errc::invalid_input, "code is not in the closure");
  std::vector<std::uint64_t> rev;
  std::int64_t cur = static_cast<std::int64_t>(code);
  while (cur >= 0) {
    rev.push_back(static_cast<std::uint64_t>(last_generator[cur]));
    cur = parent[cur];
  }
  return {rev.rbegin(), rev.rend()};
}

ClosureResult closure(const MatrixCodec& codec, const std::vector<std::uint64_t>& generators) {
  ClosureResult out{ElementSet(codec.size()), 0, std::vector<std::int64_t>(codec.size(), -1),
                    std::vector<std::int64_t>(codec.size(), -1)};
  std::vector<std::uint64_t> frontier;
  for (const auto g : generators) {
    if (out.elements.insert(g)) {
      out.last_generator[g] = static_cast<std::int64_t>(g);
      frontier.push_back(g);
    }
  }
  if (!frontier.empty()) out.saturated_at = 1;
  while (!frontier.empty() && !out.elements.full()) {
    std::vector<std::uint64_t> next;
    for (const auto x : frontier) {
      for (const auto g : generators) {
        const auto y = codec.multiply(x, g);
        if (out.elements.insert(y)) {
          out.parent[y] = static_cast<std::int64_t>(x);
          out.last_generator[y] = static_cast<std::int64_t>(g);
          next.push_back(y);
        }
      }
    }
    if (!next.empty()) ++out.saturated_at;
    frontier = std::move(next);
  }
  return out;
}

std::vector<Matrix> normals_up_to_scaling(const MatrixCodec& codec) {
  std::vector<Matrix> out;
  const std::uint64_t p = codec.field().p();
  for (std::uint64_t c = 1; c < codec.size(); ++c) {
    std::uint64_t x = c;
    while (x % p == 0) x /= p;
    if (x % p == 1) out.push_back(codec.decode(c));
  }
  return out;
}

}  // namespace matfact
