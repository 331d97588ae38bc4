#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qmon/gq.hpp"

namespace qmon {

using GQVector = std::vector<GQ>;

/// Dense row-major matrix over the Gaussian rationals.
class GQMatrix {
 public:
  GQMatrix() = default;
  GQMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static GQMatrix identity(std::size_t n);
  static GQMatrix from_rows(const std::vector<GQVector>& rows, std::size_t cols);
  /// Column vector u times row vector v^*.
  static GQMatrix outer(const GQVector& u, const GQVector& v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  GQ& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const GQ& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const GQ> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  GQVector row_vector(std::size_t r) const;
  GQVector column_vector(std::size_t c) const;
  /// Row-major flattening, used to treat matrices as vectors of GQ^{rc}.
  const std::vector<GQ>& data() const noexcept { return data_; }
  static GQMatrix from_data(std::size_t rows, std::size_t cols, std::vector<GQ> data);

  GQMatrix adjoint() const;
  GQMatrix transpose() const;
  GQMatrix conj() const;
  GQ trace() const;
  bool is_zero() const;
  bool is_hermitian() const;

  GQMatrix& operator+=(const GQMatrix& o);
  GQMatrix& operator-=(const GQMatrix& o);
  GQMatrix& operator*=(const GQ& s);
  friend GQMatrix operator+(GQMatrix a, const GQMatrix& b) { return a += b; }
  friend GQMatrix operator-(GQMatrix a, const GQMatrix& b) { return a -= b; }
  friend GQMatrix operator*(GQMatrix a, const GQ& s) { return a *= s; }
  friend GQMatrix operator*(const GQ& s, GQMatrix a) { return a *= s; }
  friend GQMatrix operator*(const GQMatrix& a, const GQMatrix& b);
  friend GQVector operator*(const GQMatrix& a, const GQVector& v);
  friend bool operator==(const GQMatrix& a, const GQMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<GQ> data_;
};

GQMatrix kron(const GQMatrix& a, const GQMatrix& b);
GQVector kron(const GQVector& a, const GQVector& b);

/// Hermitian inner product <u, v> = sum conj(u_k) v_k.
GQ inner(std::span<const GQ> u, std::span<const GQ> v);

/// In-place reduced row echelon form: pivots equal 1, pivot columns cleared
/// elsewhere, zero rows dropped. Returns the pivot column of each kept row.
std::vector<std::size_t> rref_in_place(GQMatrix& m);
GQMatrix rref(const GQMatrix& m);
std::size_t rank(const GQMatrix& m);

/// Basis (as rows) of {x : m x = 0}, in reduced echelon form.
GQMatrix nullspace(const GQMatrix& m);

/// Solves a x = b for square invertible a; nullopt when a is singular.
std::optional<GQVector> solve(const GQMatrix& a, const GQVector& b);
std::optional<GQMatrix> inverse(const GQMatrix& a);

}  // namespace qmon
