#include "qmon/gq_matrix.hpp"

#include <sstream>
#include <utility>

#include "qmon/errors.hpp"

namespace qmon {

GQMatrix GQMatrix::identity(std::size_t n) {
  GQMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

GQMatrix GQMatrix::from_rows(const std::vector<GQVector>& rows, std::size_t cols) {
  GQMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw PreconditionError("DimensionMismatch", "row length differs from column count");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

GQMatrix GQMatrix::outer(const GQVector& u, const GQVector& v) {
  GQMatrix m(u.size(), v.size());
  for (std::size_t r = 0; r < u.size(); ++r)
    for (std::size_t c = 0; c < v.size(); ++c) m(r, c) = u[r] * v[c].conj();
  return m;
}

GQMatrix GQMatrix::from_data(std::size_t rows, std::size_t cols, std::vector<GQ> data) {
  if (data.size() != rows * cols) throw PreconditionError("DimensionMismatch", "flat data has wrong length");
  GQMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.data_ = std::move(data);
  return m;
}

GQVector GQMatrix::row_vector(std::size_t r) const {
  auto s = row(r);
  return {s.begin(), s.end()};
}

GQVector GQMatrix::column_vector(std::size_t c) const {
  GQVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

GQMatrix GQMatrix::adjoint() const {
  GQMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c).conj();
  return t;
}

GQMatrix GQMatrix::transpose() const {
  GQMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

GQMatrix GQMatrix::conj() const {
  GQMatrix t(*this);
  for (auto& z : t.data_) z = z.conj();
  return t;
}

GQ GQMatrix::trace() const {
  GQ t;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

bool GQMatrix::is_zero() const {
  for (const auto& z : data_)
    if (!z.is_zero()) return false;
  return true;
}

bool GQMatrix::is_hermitian() const {
  if (!is_square()) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r; c < cols_; ++c)
      if ((*this)(r, c) != (*this)(c, r).conj()) return false;
  return true;
}

GQMatrix& GQMatrix::operator+=(const GQMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw PreconditionError("DimensionMismatch", "matrix sum");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

GQMatrix& GQMatrix::operator-=(const GQMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw PreconditionError("DimensionMismatch", "matrix difference");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

GQMatrix& GQMatrix::operator*=(const GQ& s) {
  for (auto& z : data_) z *= s;
  return *this;
}

GQMatrix operator*(const GQMatrix& a, const GQMatrix& b) {
  if (a.cols_ != b.rows_) throw PreconditionError("DimensionMismatch", "matrix product");
  GQMatrix p(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const GQ& x = a(r, k);
      if (x.is_zero()) continue;
      for (std::size_t c = 0; c < b.cols_; ++c)
        if (!b(k, c).is_zero()) p(r, c) += x * b(k, c);
    }
  return p;
}

GQVector operator*(const GQMatrix& a, const GQVector& v) {
  if (a.cols_ != v.size()) throw PreconditionError("DimensionMismatch", "matrix-vector product");
  GQVector out(a.rows_);
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (std::size_t c = 0; c < a.cols_; ++c)
      if (!v[c].is_zero() && !a(r, c).is_zero()) out[r] += a(r, c) * v[c];
  return out;
}

std::string GQMatrix::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? "; " : "");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << (*this)(r, c);
  }
  os << ']';
  return os.str();
}

GQMatrix kron(const GQMatrix& a, const GQMatrix& b) {
  GQMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q) k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
    }
  return k;
}

GQVector kron(const GQVector& a, const GQVector& b) {
  GQVector k(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) k[i * b.size() + j] = a[i] * b[j];
  }
  return k;
}

GQ inner(std::span<const GQ> u, std::span<const GQ> v) {
  if (u.size() != v.size()) throw PreconditionError("DimensionMismatch", "inner product");
  GQ s;
  for (std::size_t k = 0; k < u.size(); ++k)
    if (!u[k].is_zero() && !v[k].is_zero()) s += u[k].conj() * v[k];
  return s;
}

std::vector<std::size_t> rref_in_place(GQMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t lead_row = 0;
  for (std::size_t col = 0; col < m.cols() && lead_row < m.rows(); ++col) {
    std::size_t pivot = lead_row;
    while (pivot < m.rows() && m(pivot, col).is_zero()) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != lead_row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(lead_row, c));
    const GQ inv = m(lead_row, col).inverse();
    for (std::size_t c = col; c < m.cols(); ++c)
      if (!m(lead_row, c).is_zero()) m(lead_row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead_row || m(r, col).is_zero()) continue;
      const GQ f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        if (!m(lead_row, c).is_zero()) m(r, c) -= f * m(lead_row, c);
    }
    pivots.push_back(col);
    ++lead_row;
  }
  if (lead_row < m.rows()) {
    std::vector<GQ> kept(m.data().begin(), m.data().begin() + static_cast<std::ptrdiff_t>(lead_row * m.cols()));
    m = GQMatrix::from_data(lead_row, m.cols(), std::move(kept));
  }
  return pivots;
}

GQMatrix rref(const GQMatrix& m) {
  GQMatrix r(m);
  rref_in_place(r);
  return r;
}

std::size_t rank(const GQMatrix& m) { return rref(m).rows(); }

GQMatrix nullspace(const GQMatrix& m) {
  GQMatrix r(m);
  auto pivots = rref_in_place(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<GQVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    GQVector v(m.cols());
    v[free] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r(k, free);
    basis.push_back(std::move(v));
  }
  GQMatrix out = GQMatrix::from_rows(basis, m.cols());
  rref_in_place(out);
  return out;
}

std::optional<GQMatrix> inverse(const GQMatrix& a) {
  if (!a.is_square()) throw PreconditionError("DimensionMismatch", "inverse of non-square matrix");
  const std::size_t n = a.rows();
  GQMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n + r) = 1;
  }
  auto pivots = rref_in_place(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  GQMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
  return inv;
}

std::optional<GQVector> solve(const GQMatrix& a, const GQVector& b) {
  if (!a.is_square() || b.size() != a.rows()) throw PreconditionError("DimensionMismatch", "linear solve");
  const std::size_t n = a.rows();
  GQMatrix aug(n, n + 1);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n) = b[r];
  }
  auto pivots = rref_in_place(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  GQVector x(n);
  for (std::size_t r = 0; r < n; ++r) x[r] = aug(r, n);
  return x;
}

}  // namespace qmon
