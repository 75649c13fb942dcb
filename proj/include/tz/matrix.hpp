#ifndef TZ_MATRIX_HPP
#define TZ_MATRIX_HPP
//
// Project : tzsolve
// Module  : matrix
// Dense complex matrix, column-major. Correctness-first; used by the
// hierarchical formats for their small blocks and by the dense oracle.
//

#include <cstddef>
#include <span>
#include <vector>

#include "tz/types.hpp"

namespace tz {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  cplx& operator()(std::size_t i, std::size_t j) noexcept { return a_[j * rows_ + i]; }
  const cplx& operator()(std::size_t i, std::size_t j) const noexcept { return a_[j * rows_ + i]; }

  cplx* col(std::size_t j) noexcept { return a_.data() + j * rows_; }
  const cplx* col(std::size_t j) const noexcept { return a_.data() + j * rows_; }
  cplx* data() noexcept { return a_.data(); }
  const cplx* data() const noexcept { return a_.data(); }

  Matrix adjoint() const;
  Matrix transpose() const;
  Matrix conj() const;
  double frobenius_norm() const;
  double max_abs() const;

  Matrix block(std::size_t i0, std::size_t j0, std::size_t r, std::size_t c) const;
  Matrix rows_at(const std::vector<std::size_t>& idx) const;
  Matrix cols_at(const std::vector<std::size_t>& idx) const;
  void set_block(std::size_t i0, std::size_t j0, const Matrix& b);

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(cplx s);

 private:
  std::size_t rows_{0}, cols_{0};
  std::vector<cplx> a_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(cplx s, Matrix a);

std::vector<cplx> matvec(const Matrix& a, std::span<const cplx> x);
std::vector<cplx> matvec_adjoint(const Matrix& a, std::span<const cplx> x);

/// [a, b] side by side.
Matrix hcat(const Matrix& a, const Matrix& b);
/// [a; b] stacked.
Matrix vcat(const Matrix& a, const Matrix& b);
/// blkdiag(a, b).
Matrix blkdiag(const Matrix& a, const Matrix& b);

double norm2(std::span<const cplx> x);

}  // namespace tz

#endif
