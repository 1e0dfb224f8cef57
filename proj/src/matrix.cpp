#include "matfact/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace matfact {

void require_same_field(const FieldSpec& a, const FieldSpec& b) {
  if (a != b) raise(Errc::field_mismatch, a.to_string() + " vs " + b.to_string());
}

void require_same_shape(const Matrix& a, const Matrix& b) {
  require_same_field(a.field(), b.field());
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    raise(Errc::dimension_mismatch, std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                                        std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

Matrix::Matrix(const FieldSpec& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, Scalar::zero(field)) {}

Matrix::Matrix(const FieldSpec& field, std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
    : field_(field), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) raise(Errc::dimension_mismatch, "entry count does not match shape");
  for (const auto& e : entries_) require_same_field(field_, e.field());
}

Matrix Matrix::from_rows(const FieldSpec& field, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<Scalar> entries;
  entries.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) raise(Errc::dimension_mismatch, "ragged rows");
    for (auto v : row) entries.emplace_back(field, v);
  }
  return Matrix(field, r, c, std::move(entries));
}

Matrix Matrix::identity(const FieldSpec& field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(field);
  return m;
}

Matrix Matrix::elementary(const FieldSpec& field, std::size_t n, std::size_t i, std::size_t j) {
  return elementary(field, n, n, i, j);
}

Matrix Matrix::elementary(const FieldSpec& field, std::size_t rows, std::size_t cols, std::size_t i, std::size_t j) {
  if (i >= rows || j >= cols) raise(Errc::dimension_mismatch, "elementary index out of range");
  Matrix m(field, rows, cols);
  m(i, j) = Scalar::one(field);
  return m;
}

Matrix Matrix::rank_block(const FieldSpec& field, std::size_t n, std::size_t r) {
  if (r > n) raise(Errc::dimension_mismatch, "rank exceeds size");
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < r; ++i) m(i, i) = Scalar::one(field);
  return m;
}

Matrix Matrix::diagonal(const std::vector<Scalar>& diag) {
  if (diag.empty()) raise(Errc::dimension_mismatch, "empty diagonal");
  Matrix m(diag.front().field(), diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

bool Matrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Scalar& s) { return s.is_zero(); });
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Scalar Matrix::trace() const {
  if (!is_square()) raise(Errc::dimension_mismatch, "trace of a non-square matrix");
  Scalar t = Scalar::zero(field_);
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

Matrix Matrix::row(std::size_t r) const { return block(r, 0, 1, cols_); }
Matrix Matrix::col(std::size_t c) const { return block(0, c, rows_, 1); }

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const {
  if (r0 + rows > rows_ || c0 + cols > cols_) raise(Errc::dimension_mismatch, "block out of range");
  Matrix b(field_, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& src) {
  require_same_field(field_, src.field());
  if (r0 + src.rows() > rows_ || c0 + src.cols() > cols_) raise(Errc::dimension_mismatch, "block out of range");
  for (std::size_t r = 0; r < src.rows(); ++r)
    for (std::size_t c = 0; c < src.cols(); ++c) (*this)(r0 + r, c0 + c) = src(r, c);
}

Matrix Matrix::vectorize() const { return Matrix(field_, 1, rows_ * cols_, entries_); }

Matrix Matrix::reshape(std::size_t rows, std::size_t cols) const {
  if (rows * cols != entries_.size()) raise(Errc::dimension_mismatch, "reshape changes entry count");
  return Matrix(field_, rows, cols, entries_);
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c).to_string();
    os << ']';
  }
  os << ']';
  return os.str();
}

Matrix Matrix::operator-() const {
  Matrix out = *this;
  for (auto& e : out.entries_) e = -e;
  return out;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  require_same_shape(*this, rhs);
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += rhs.entries_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  require_same_shape(*this, rhs);
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= rhs.entries_[k];
  return *this;
}

Matrix& Matrix::operator*=(const Scalar& s) {
  require_same_field(field_, s.field());
  for (auto& e : entries_) e *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_field(a.field_, b.field_);
  if (a.cols_ != b.rows_) raise(Errc::dimension_mismatch, "inner dimensions differ in product");
  Matrix out(a.field_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (!b(k, j).is_zero()) out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

Matrix product(const FieldSpec& field, std::size_t n, const std::vector<Matrix>& factors) {
  Matrix acc = Matrix::identity(field, n);
  for (const auto& f : factors) acc = acc * f;
  return acc;
}

namespace {

// Gauss-Jordan on `a`, choosing pivots only among the first `pivot_cols`
// columns. Row operations are mirrored on `mirror` when given.
RrefResult eliminate(Matrix a, std::size_t pivot_cols, Matrix* mirror) {
  const FieldSpec f = a.field();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  const auto swap_rows = [](Matrix& m, std::size_t r1, std::size_t r2) {
    for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(r1, c), m(r2, c));
  };
  // row r -= factor * row src
  const auto axpy = [](Matrix& m, std::size_t r, std::size_t src, const Scalar& factor, std::size_t from) {
    for (std::size_t c = from; c < m.cols(); ++c) {
      if (!m(src, c).is_zero()) m(r, c) -= factor * m(src, c);
    }
  };
  for (std::size_t col = 0; col < pivot_cols && row < a.rows(); ++col) {
    std::size_t pr = row;
    while (pr < a.rows() && a(pr, col).is_zero()) ++pr;
    if (pr == a.rows()) continue;
    if (pr != row) {
      swap_rows(a, pr, row);
      if (mirror) swap_rows(*mirror, pr, row);
    }
    const Scalar inv = a(row, col).inverse();
    if (!inv.is_one()) {
      for (std::size_t c = col; c < a.cols(); ++c) a(row, c) *= inv;
      if (mirror)
        for (std::size_t c = 0; c < mirror->cols(); ++c) (*mirror)(row, c) *= inv;
    }
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col).is_zero()) continue;
      const Scalar factor = a(r, col);
      axpy(a, r, row, factor, col);
      if (mirror) axpy(*mirror, r, row, factor, 0);
    }
    pivots.push_back(col);
    ++row;
  }
  (void)f;
  const std::size_t rk = pivots.size();
  return RrefResult{std::move(a), std::move(pivots), rk};
}

}  // namespace

RrefResult rref(const Matrix& m) { return eliminate(m, m.cols(), nullptr); }

RrefWithTransform rref_with_transform(const Matrix& m) {
  Matrix t = Matrix::identity(m.field(), m.rows());
  RrefResult r = eliminate(m, m.cols(), &t);
  return RrefWithTransform{std::move(r), std::move(t)};
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

std::vector<Matrix> kernel_basis(const Matrix& m) {
  const RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<Matrix> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Matrix x(m.field(), m.cols(), 1);
    x(free, 0) = Scalar::one(m.field());
    for (std::size_t k = 0; k < r.rank; ++k) x(r.pivots[k], 0) = -r.reduced(k, free);
    basis.push_back(std::move(x));
  }
  return basis;
}

SolveResult solve(const Matrix& a, const Matrix& b, SolveSide side) {
  require_same_field(a.field(), b.field());
  if (side == SolveSide::left) {
    // X A = B  <=>  A^T X^T = B^T; a row certificate y of the transposed
    // system is a column with A y^T = 0, B y^T != 0.
    SolveResult t = solve(a.transpose(), b.transpose(), SolveSide::right);
    if (auto* x = std::get_if<Matrix>(&t)) return x->transpose();
    return NoSolution{std::get<NoSolution>(t).certificate.transpose()};
  }
  if (a.rows() != b.rows()) raise(Errc::dimension_mismatch, "solve: row counts differ");
  const FieldSpec f = a.field();
  Matrix aug(f, a.rows(), a.cols() + b.cols());
  aug.set_block(0, 0, a);
  aug.set_block(0, a.cols(), b);
  Matrix t = Matrix::identity(f, a.rows());
  const RrefResult r = eliminate(aug, a.cols(), &t);
  // Rows past the rank have zero A-part; any nonzero B-part is inconsistent.
  for (std::size_t row = r.rank; row < a.rows(); ++row) {
    for (std::size_t c = 0; c < b.cols(); ++c) {
      if (!r.reduced(row, a.cols() + c).is_zero()) return NoSolution{t.row(row)};
    }
  }
  Matrix x(f, a.cols(), b.cols());
  for (std::size_t k = 0; k < r.rank; ++k)
    for (std::size_t c = 0; c < b.cols(); ++c) x(r.pivots[k], c) = r.reduced(k, a.cols() + c);
  return x;
}

namespace {

Scalar det_by_elimination(Matrix a) {
  const std::size_t n = a.rows();
  Scalar det = Scalar::one(a.field());
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pr = col;
    while (pr < n && a(pr, col).is_zero()) ++pr;
    if (pr == n) return Scalar::zero(a.field());
    if (pr != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(pr, c), a(col, c));
      det = -det;
    }
    det *= a(col, col);
    const Scalar inv = a(col, col).inverse();
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a(r, col).is_zero()) continue;
      const Scalar factor = a(r, col) * inv;
      for (std::size_t c = col; c < n; ++c) a(r, c) -= factor * a(col, c);
    }
  }
  return det;
}

Matrix minor_matrix(const Matrix& m, std::size_t skip_r, std::size_t skip_c) {
  const std::size_t n = m.rows();
  Matrix out(m.field(), n - 1, n - 1);
  for (std::size_t r = 0, rr = 0; r < n; ++r) {
    if (r == skip_r) continue;
    for (std::size_t c = 0, cc = 0; c < n; ++c) {
      if (c == skip_c) continue;
      out(rr, cc++) = m(r, c);
    }
    ++rr;
  }
  return out;
}

Scalar cofactor_det(const Matrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return Scalar::one(m.field());
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

// adj(m)(j, i) = (-1)^{i+j} det(minor(i, j)), with minors evaluated by `det`.
template <class Det>
Matrix adjugate_from_minors(const Matrix& m, Det det) {
  const std::size_t n = m.rows();
  Matrix adj(m.field(), n, n);
  if (n == 1) {
    adj(0, 0) = Scalar::one(m.field());
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Scalar c = det(minor_matrix(m, i, j));
      adj(j, i) = (i + j) % 2 == 0 ? c : -c;
    }
  }
  return adj;
}

void require_square(const Matrix& m) {
  if (!m.is_square()) raise(Errc::dimension_mismatch, "expected a square matrix");
}

}  // namespace

Scalar determinant(const Matrix& m) {
  require_square(m);
  return m.rows() <= 3 ? cofactor_det(m) : det_by_elimination(m);
}

InverseAdjugate inverse_and_adjugate(const Matrix& m) {
  require_square(m);
  const FieldSpec f = m.field();
  const std::size_t n = m.rows();
  if (n <= 3) {
    Scalar det = cofactor_det(m);
    Matrix adj = adjugate_from_minors(m, cofactor_det);
    std::optional<Matrix> inv;
    if (!det.is_zero()) inv = adj * det.inverse();
    return InverseAdjugate{std::move(det), std::move(adj), std::move(inv)};
  }
  // Invert [m | I] by elimination.
  Matrix t = Matrix::identity(f, n);
  const RrefResult r = eliminate(m, n, &t);
  if (r.rank == n) {
    Scalar det = det_by_elimination(m);
    Matrix adj = t * det;
    return InverseAdjugate{std::move(det), std::move(adj), std::move(t)};
  }
  if (r.rank + 1 < n) return InverseAdjugate{Scalar::zero(f), Matrix(f, n, n), std::nullopt};
  return InverseAdjugate{Scalar::zero(f), adjugate_from_minors(m, det_by_elimination), std::nullopt};
}

Matrix adjugate(const Matrix& m) { return inverse_and_adjugate(m).adj; }

Matrix inverse(const Matrix& m) {
  require_square(m);
  if (m.rows() <= 3) {
    auto ia = inverse_and_adjugate(m);
    if (!ia.inv) raise(Errc::singular_input, "matrix is singular");
    return std::move(*ia.inv);
  }
  Matrix t = Matrix::identity(m.field(), m.rows());
  const RrefResult r = eliminate(m, m.cols(), &t);
  if (r.rank != m.rows()) raise(Errc::singular_input, "matrix is singular");
  return t;
}

bool is_invertible(const Matrix& m) {
  require_square(m);
  return m.rows() <= 3 ? !cofactor_det(m).is_zero() : rank(m) == m.rows();
}

Matrix conjugate(const Matrix& m, const Matrix& p) {
  require_same_shape(m, p);
  require_square(m);
  InverseAdjugate ia = inverse_and_adjugate(p);
  if (!ia.inv) raise(Errc::singular_conjugator, "conjugator is singular");
  return p * m * *ia.inv;
}

TransvectionFactorization transvection_factor(const Matrix& m) {
  require_square(m);
  const FieldSpec f = m.field();
  const std::size_t n = m.rows();
  if (!is_invertible(m)) raise(Errc::singular_input, "transvection_factor needs an invertible matrix");
  Matrix a = m;
  // Row operations applied so far: a = S_k ... S_1 m. Each entry records
  // "row i += lambda * row j".
  struct Op {
    std::size_t i, j;
    Scalar lambda;
  };
  std::vector<Op> ops;
  const auto add_row = [&](std::size_t i, std::size_t j, const Scalar& lambda) {
    for (std::size_t c = 0; c < n; ++c) {
      if (!a(j, c).is_zero()) a(i, c) += lambda * a(j, c);
    }
    ops.push_back(Op{i, j, lambda});
  };
  const Scalar one = Scalar::one(f);
  // Lower phase: unit diagonal on columns 0..n-2 and zeros below it.
  for (std::size_t c = 0; c + 1 < n; ++c) {
    if (!a(c, c).is_one()) {
      std::size_t below = c + 1;
      while (below < n && a(below, c).is_zero()) ++below;
      if (below == n) {
        // The pivot is nonzero here (columns left of c are cleared and m is
        // invertible), so copying row c down creates a usable row.
        add_row(c + 1, c, one);
        below = c + 1;
      }
      add_row(c, below, (one - a(c, c)) / a(below, c));
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      if (!a(r, c).is_zero()) add_row(r, c, -a(r, c));
    }
  }
  // Upper phase, right to left: row c is a multiple of e_c once the columns
  // to its right are cleared.
  for (std::size_t c = n; c-- > 1;) {
    const Scalar pivot_inv = a(c, c).inverse();
    for (std::size_t r = 0; r < c; ++r) {
      if (!a(r, c).is_zero()) add_row(r, c, -(a(r, c) * pivot_inv));
    }
  }
  TransvectionFactorization out{{}, a};
  out.transvections.reserve(ops.size());
  // m = S_1^{-1} ... S_k^{-1} D and (I + lambda E(i,j))^{-1} = I - lambda E(i,j).
  for (const auto& op : ops) {
    Matrix t = Matrix::identity(f, n);
    t(op.i, op.j) = -op.lambda;
    out.transvections.push_back(std::move(t));
  }
  return out;
}

RankNormalForm rank_normal_form(const Matrix& m) {
  require_square(m);
  const FieldSpec f = m.field();
  const std::size_t n = m.rows();
  RrefWithTransform rt = rref_with_transform(m);
  const RrefResult& r = rt.result;
  // right: the nonzero rows of the RREF, completed with e_j for non-pivot j.
  Matrix right(f, n, n);
  std::vector<bool> is_pivot(n, false);
  for (auto p : r.pivots) is_pivot[p] = true;
  for (std::size_t k = 0; k < r.rank; ++k) right.set_block(k, 0, r.reduced.row(k));
  std::size_t next = r.rank;
  for (std::size_t j = 0; j < n; ++j) {
    if (!is_pivot[j]) right(next++, j) = Scalar::one(f);
  }
  return RankNormalForm{r.rank, inverse(rt.transform), std::move(right)};
}

Matrix complete_to_basis(const FieldSpec& field, std::size_t n, const std::vector<Matrix>& columns) {
  Matrix out(field, n, n);
  std::size_t filled = 0;
  for (const auto& c : columns) {
    if (c.rows() != n || c.cols() != 1) raise(Errc::dimension_mismatch, "complete_to_basis expects columns");
    out.set_block(0, filled++, c);
  }
  if (rank(out) != filled) raise(Errc::precondition_violated, "columns are linearly dependent");
  for (std::size_t j = 0; j < n && filled < n; ++j) {
    Matrix trial = out;
    trial(j, filled) = Scalar::one(field);
    if (rank(trial) == filled + 1) {
      out = std::move(trial);
      ++filled;
    }
  }
  return out;
}

Matrix permutation_matrix(const FieldSpec& field, const std::vector<std::size_t>& images) {
  const std::size_t n = images.size();
  Matrix p(field, n, n);
  std::vector<bool> seen(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    if (images[k] >= n || seen[images[k]]) raise(Errc::invalid_input, "not a permutation");
    seen[images[k]] = true;
    p(images[k], k) = Scalar::one(field);
  }
  return p;
}

}  // namespace matfact
