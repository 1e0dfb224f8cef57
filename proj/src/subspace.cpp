#include "matfact/subspace.hpp"

namespace matfact {

LinearSubspace::LinearSubspace(const FieldSpec& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), echelon_(field, 0, rows * cols) {}

LinearSubspace::LinearSubspace(const FieldSpec& field, std::size_t rows, std::size_t cols, Matrix echelon,
                               std::vector<std::size_t> pivots)
    : field_(field), rows_(rows), cols_(cols), echelon_(std::move(echelon)), pivots_(std::move(pivots)) {}

LinearSubspace LinearSubspace::span_from(const FieldSpec& field, std::size_t rows, std::size_t cols,
                                         const std::vector<Matrix>& mats) {
  const std::size_t d = rows * cols;
  Matrix stacked(field, mats.size(), d);
  for (std::size_t k = 0; k < mats.size(); ++k) {
    const Matrix& m = mats[k];
    require_same_field(field, m.field());
    if (m.rows() != rows || m.cols() != cols) raise(Errc::dimension_mismatch, "span_from: shape mismatch");
    for (std::size_t e = 0; e < d; ++e) stacked(k, e) = m.entries()[e];
  }
  RrefResult r = rref(stacked);
  Matrix echelon = r.reduced.block(0, 0, r.rank, d);
  return LinearSubspace(field, rows, cols, std::move(echelon), std::move(r.pivots));
}

LinearSubspace LinearSubspace::full(const FieldSpec& field, std::size_t rows, std::size_t cols) {
  std::vector<std::size_t> pivots(rows * cols);
  for (std::size_t k = 0; k < pivots.size(); ++k) pivots[k] = k;
  return LinearSubspace(field, rows, cols, Matrix::identity(field, rows * cols), std::move(pivots));
}

LinearSubspace LinearSubspace::sl(const FieldSpec& field, std::size_t n) {
  return ortho_complement(span_from(field, n, {Matrix::identity(field, n)}));
}

std::size_t LinearSubspace::n() const {
  if (!is_square()) raise(Errc::dimension_mismatch, "subspace of non-square matrices");
  return rows_;
}

std::vector<Matrix> LinearSubspace::basis() const {
  std::vector<Matrix> out;
  out.reserve(dim());
  for (std::size_t k = 0; k < dim(); ++k) out.push_back(echelon_.row(k).reshape(rows_, cols_));
  return out;
}

void LinearSubspace::require_member_shape(const Matrix& m) const {
  require_same_field(field_, m.field());
  if (m.rows() != rows_ || m.cols() != cols_) raise(Errc::dimension_mismatch, "matrix shape differs from subspace");
}

Matrix LinearSubspace::reduce(const Matrix& m) const {
  require_member_shape(m);
  std::vector<Scalar> v = m.entries();
  for (std::size_t k = 0; k < dim(); ++k) {
    const Scalar coef = v[pivots_[k]];
    if (coef.is_zero()) continue;
    for (std::size_t e = pivots_[k]; e < v.size(); ++e) {
      if (!echelon_(k, e).is_zero()) v[e] -= coef * echelon_(k, e);
    }
  }
  return Matrix(field_, rows_, cols_, std::move(v));
}

bool LinearSubspace::contains(const Matrix& m) const { return reduce(m).is_zero(); }

std::optional<std::vector<Scalar>> LinearSubspace::coordinates(const Matrix& m) const {
  if (!contains(m)) return std::nullopt;
  std::vector<Scalar> coefs;
  coefs.reserve(dim());
  for (auto p : pivots_) coefs.push_back(m.entries()[p]);
  return coefs;
}

Matrix LinearSubspace::combine(const std::vector<Scalar>& coefficients) const {
  if (coefficients.size() != dim()) raise(Errc::dimension_mismatch, "coefficient count differs from dim");
  std::vector<Scalar> v(ambient_dim(), Scalar::zero(field_));
  for (std::size_t k = 0; k < dim(); ++k) {
    if (coefficients[k].is_zero()) continue;
    for (std::size_t e = pivots_[k]; e < v.size(); ++e) {
      if (!echelon_(k, e).is_zero()) v[e] += coefficients[k] * echelon_(k, e);
    }
  }
  return Matrix(field_, rows_, cols_, std::move(v));
}

bool LinearSubspace::includes(const LinearSubspace& other) const {
  if (other.field_ != field_ || other.rows_ != rows_ || other.cols_ != cols_) return false;
  for (const auto& b : other.basis()) {
    if (!contains(b)) return false;
  }
  return true;
}

bool operator==(const LinearSubspace& a, const LinearSubspace& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.pivots_ == b.pivots_ &&
         a.echelon_ == b.echelon_;
}

namespace {

void require_compatible(const LinearSubspace& u, const LinearSubspace& v) {
  require_same_field(u.field(), v.field());
  if (u.rows() != v.rows() || u.cols() != v.cols()) raise(Errc::dimension_mismatch, "subspaces of different shapes");
}

}  // namespace

LinearSubspace sum(const LinearSubspace& u, const LinearSubspace& v) {
  require_compatible(u, v);
  std::vector<Matrix> all = u.basis();
  for (auto& b : v.basis()) all.push_back(std::move(b));
  return LinearSubspace::span_from(u.field(), u.rows(), u.cols(), all);
}

LinearSubspace annihilator(const LinearSubspace& v) {
  std::vector<Matrix> basis;
  for (const auto& x : kernel_basis(v.echelon())) basis.push_back(x.reshape(v.rows(), v.cols()));
  return LinearSubspace::span_from(v.field(), v.rows(), v.cols(), basis);
}

LinearSubspace intersect(const LinearSubspace& u, const LinearSubspace& v) {
  require_compatible(u, v);
  return annihilator(sum(annihilator(u), annihilator(v)));
}

LinearSubspace ortho_complement(const LinearSubspace& v) {
  // tr(A B) = vec(A) . vec(B^T)
  const std::size_t n = v.n();
  std::vector<Matrix> transposed;
  for (const auto& b : v.basis()) transposed.push_back(b.transpose());
  return annihilator(LinearSubspace::span_from(v.field(), n, transposed));
}

LinearSubspace product_span_two(const LinearSubspace& v, const LinearSubspace& w) {
  require_compatible(v, w);
  const std::size_t n = v.n();
  const auto bv = v.basis(), bw = w.basis();
  std::vector<Matrix> products;
  products.reserve(bv.size() * bw.size());
  for (const auto& b : bv)
    for (const auto& c : bw) products.push_back(b * c);
  return LinearSubspace::span_from(v.field(), n, products);
}

LinearSubspace commutator_span(const LinearSubspace& v) {
  const std::size_t n = v.n();
  const auto b = v.basis();
  std::vector<Matrix> brackets;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j) brackets.push_back(b[i] * b[j] - b[j] * b[i]);
  return LinearSubspace::span_from(v.field(), n, brackets);
}

LinearSubspace transform(const LinearSubspace& v, const Matrix& left, const Matrix& right) {
  std::vector<Matrix> images;
  for (const auto& b : v.basis()) images.push_back(left * b * right);
  return LinearSubspace::span_from(v.field(), left.rows(), right.cols(), images);
}

LinearSubspace conjugate(const LinearSubspace& v, const Matrix& p) {
  const auto ia = inverse_and_adjugate(p);
  if (!ia.inv) raise(Errc::singular_conjugator, "conjugator is singular");
  return transform(v, p, *ia.inv);
}

LinearSubspace row_support(const FieldSpec& field, std::size_t rows, std::size_t cols, std::size_t r) {
  std::vector<Matrix> basis;
  for (std::size_t c = 0; c < cols; ++c) basis.push_back(Matrix::elementary(field, rows, cols, r, c));
  return LinearSubspace::span_from(field, rows, cols, basis);
}

LinearSubspace column_support(const FieldSpec& field, std::size_t rows, std::size_t cols, std::size_t c) {
  std::vector<Matrix> basis;
  for (std::size_t r = 0; r < rows; ++r) basis.push_back(Matrix::elementary(field, rows, cols, r, c));
  return LinearSubspace::span_from(field, rows, cols, basis);
}

AffineSubspace::AffineSubspace(Matrix base, LinearSubspace translation)
    : base_(translation.reduce(base)), translation_(std::move(translation)) {}

AffineSubspace AffineSubspace::linear(const LinearSubspace& v) {
  return AffineSubspace(Matrix(v.field(), v.rows(), v.cols()), v);
}

bool AffineSubspace::contains(const Matrix& m) const { return translation_.contains(m - base_); }

Matrix AffineSubspace::point(const std::vector<Scalar>& coefficients) const {
  return base_ + translation_.combine(coefficients);
}

std::optional<AffineSubspace> intersect_affine(const AffineSubspace& a, const AffineSubspace& b) {
  require_compatible(a.translation(), b.translation());
  const FieldSpec f = a.field();
  const auto ua = a.translation().basis(), ub = b.translation().basis();
  const std::size_t d = a.translation().ambient_dim();
  Matrix system(f, d, ua.size() + ub.size());
  for (std::size_t k = 0; k < ua.size(); ++k)
    for (std::size_t e = 0; e < d; ++e) system(e, k) = ua[k].entries()[e];
  for (std::size_t k = 0; k < ub.size(); ++k)
    for (std::size_t e = 0; e < d; ++e) system(e, ua.size() + k) = -ub[k].entries()[e];
  const Matrix rhs = (b.base() - a.base()).vectorize().transpose();
  const SolveResult sol = solve(system, rhs);
  const auto* x = std::get_if<Matrix>(&sol);
  if (!x) return std::nullopt;
  Matrix point = a.base();
  for (std::size_t k = 0; k < ua.size(); ++k) {
    if (!(*x)(k, 0).is_zero()) point += ua[k] * (*x)(k, 0);
  }
  return AffineSubspace(std::move(point), intersect(a.translation(), b.translation()));
}

AffineSubspace conjugate(const AffineSubspace& a, const Matrix& p) {
  const auto ia = inverse_and_adjugate(p);
  if (!ia.inv) raise(Errc::singular_conjugator, "conjugator is singular");
  return AffineSubspace(p * a.base() * *ia.inv, transform(a.translation(), p, *ia.inv));
}

Hyperplane::Hyperplane(Matrix normal)
    : normal_(std::move(normal)), subspace_(normal_.field(), normal_.rows(), normal_.cols()) {
  if (!normal_.is_square()) raise(Errc::dimension_mismatch, "hyperplane normal must be square");
  if (normal_.is_zero()) raise(Errc::invalid_input, "hyperplane normal must be nonzero");
  subspace_ = ortho_complement(LinearSubspace::span_from(normal_.field(), normal_.rows(), {normal_}));
}

Scalar Hyperplane::pairing(const Matrix& m) const {
  require_same_shape(normal_, m);
  Scalar t = Scalar::zero(field());
  const std::size_t k = n();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (!normal_(i, j).is_zero() && !m(j, i).is_zero()) t += normal_(i, j) * m(j, i);
    }
  return t;
}

Hyperplane hyperplane_from_subspace(const LinearSubspace& h) {
  const LinearSubspace perp = ortho_complement(h);
  if (perp.dim() != 1) raise(Errc::invalid_input, "subspace is not a hyperplane");
  return Hyperplane(perp.basis().front());
}

Hyperplane conjugate(const Hyperplane& h, const Matrix& p) { return Hyperplane(conjugate(h.normal(), p)); }

HyperplaneMeet affine_meet_hyperplane(const Hyperplane& f, const AffineSubspace& g) {
  require_same_shape(f.normal(), g.base());
  const Scalar at_base = f.pairing(g.base());
  if (at_base.is_zero()) return g.base();
  for (const auto& b : g.translation().basis()) {
    const Scalar slope = f.pairing(b);
    if (!slope.is_zero()) return g.base() - b * (at_base / slope);
  }
  return TranslationContained{};
}

namespace {

template <class Keep>
LinearSubspace coordinate_subspace(const FieldSpec& field, std::size_t n, Keep keep) {
  std::vector<Matrix> basis;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (keep(i, j)) basis.push_back(Matrix::elementary(field, n, i, j));
    }
  return LinearSubspace::span_from(field, n, basis);
}

}  // namespace

LinearSubspace first_column_subalgebra(const FieldSpec& field, std::size_t n) {
  return coordinate_subspace(field, n, [](std::size_t i, std::size_t j) { return !(j == 0 && i > 0); });
}

LinearSubspace degenerate_left_block(const FieldSpec& field, std::size_t n, std::size_t k) {
  if (k > n) raise(Errc::dimension_mismatch, "block index exceeds n");
  return coordinate_subspace(field, n, [k](std::size_t i, std::size_t j) { return !(i == 0 && j < k); });
}

LinearSubspace degenerate_right_block(const FieldSpec& field, std::size_t n, std::size_t k) {
  if (k > n) raise(Errc::dimension_mismatch, "block index exceeds n");
  return coordinate_subspace(field, n, [k](std::size_t i, std::size_t j) { return !(j == 0 && i >= k); });
}

}  // namespace matfact
