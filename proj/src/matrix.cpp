#include "tz/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "tz/error.hpp"

namespace tz {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix m(cols_, rows_);
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t i = 0; i < rows_; ++i) m(j, i) = std::conj((*this)(i, j));
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(cols_, rows_);
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t i = 0; i < rows_; ++i) m(j, i) = (*this)(i, j);
  return m;
}

Matrix Matrix::conj() const {
  Matrix m(rows_, cols_);
  for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = std::conj(a_[k]);
  return m;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (const cplx& v : a_) s += std::norm(v);
  return std::sqrt(s);
}

double Matrix::max_abs() const {
  double s = 0.0;
  for (const cplx& v : a_) s = std::max(s, std::abs(v));
  return s;
}

Matrix Matrix::block(std::size_t i0, std::size_t j0, std::size_t r, std::size_t c) const {
  require(i0 + r <= rows_ && j0 + c <= cols_, errc::invalid_size, "block out of range");
  Matrix m(r, c);
  for (std::size_t j = 0; j < c; ++j)
    for (std::size_t i = 0; i < r; ++i) m(i, j) = (*this)(i0 + i, j0 + j);
  return m;
}

Matrix Matrix::rows_at(const std::vector<std::size_t>& idx) const {
  Matrix m(idx.size(), cols_);
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t i = 0; i < idx.size(); ++i) m(i, j) = (*this)(idx[i], j);
  return m;
}

Matrix Matrix::cols_at(const std::vector<std::size_t>& idx) const {
  Matrix m(rows_, idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j)
    for (std::size_t i = 0; i < rows_; ++i) m(i, j) = (*this)(i, idx[j]);
  return m;
}

void Matrix::set_block(std::size_t i0, std::size_t j0, const Matrix& b) {
  require(i0 + b.rows() <= rows_ && j0 + b.cols() <= cols_, errc::invalid_size,
          "set_block out of range");
  for (std::size_t j = 0; j < b.cols(); ++j)
    for (std::size_t i = 0; i < b.rows(); ++i) (*this)(i0 + i, j0 + j) = b(i, j);
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  require(rows_ == rhs.rows_ && cols_ == rhs.cols_, errc::invalid_size, "shape mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += rhs.a_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  require(rows_ == rhs.rows_ && cols_ == rhs.cols_, errc::invalid_size, "shape mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= rhs.a_[k];
  return *this;
}

Matrix& Matrix::operator*=(cplx s) {
  for (cplx& v : a_) v *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), errc::invalid_size, "matmul shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx bkj = b(k, j);
      if (bkj == cplx(0.0)) continue;
      const cplx* acol = a.col(k);
      cplx* ccol = c.col(j);
      for (std::size_t i = 0; i < a.rows(); ++i) ccol[i] += acol[i] * bkj;
    }
  }
  return c;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(cplx s, Matrix a) { return a *= s; }

std::vector<cplx> matvec(const Matrix& a, std::span<const cplx> x) {
  require(a.cols() == x.size(), errc::length_mismatch, "matvec length mismatch");
  std::vector<cplx> y(a.rows());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    const cplx xj = x[j];
    if (xj == cplx(0.0)) continue;
    const cplx* acol = a.col(j);
    for (std::size_t i = 0; i < a.rows(); ++i) y[i] += acol[i] * xj;
  }
  return y;
}

std::vector<cplx> matvec_adjoint(const Matrix& a, std::span<const cplx> x) {
  require(a.rows() == x.size(), errc::length_mismatch, "matvec length mismatch");
  std::vector<cplx> y(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    const cplx* acol = a.col(j);
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += std::conj(acol[i]) * x[i];
    y[j] = s;
  }
  return y;
}

Matrix hcat(const Matrix& a, const Matrix& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  require(a.rows() == b.rows(), errc::invalid_size, "hcat row mismatch");
  Matrix m(a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

Matrix vcat(const Matrix& a, const Matrix& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  require(a.cols() == b.cols(), errc::invalid_size, "vcat col mismatch");
  Matrix m(a.rows() + b.rows(), a.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

Matrix blkdiag(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

double norm2(std::span<const cplx> x) {
  double s = 0.0;
  for (const cplx& v : x) s += std::norm(v);
  return std::sqrt(s);
}

}  // namespace tz
