#include "tz/toeplitz.hpp"

#include "tz/error.hpp"
#include "tz/fft.hpp"

namespace tz {

ToeplitzOperator::ToeplitzOperator(std::vector<cplx> col, std::vector<cplx> row)
    : col_(std::move(col)), row_(std::move(row)) {
  require(col_.size() == row_.size(), errc::invalid_size, "col/row length mismatch");
  require(col_.size() >= 4 && is_power_of_two(col_.size()), errc::invalid_size,
          "n must be a power of two, n >= 4");
  require(col_[0] == row_[0], errc::corner_mismatch, "col[0] must equal row[0]");
}

cplx ToeplitzOperator::diag_entry(std::ptrdiff_t k) const {
  return k >= 0 ? col_[static_cast<std::size_t>(k)] : row_[static_cast<std::size_t>(-k)];
}

ToeplitzOperator make_toeplitz(std::vector<cplx> col, std::vector<cplx> row) {
  return ToeplitzOperator(std::move(col), std::move(row));
}

DisplacementGenerators toeplitz_generators(const ToeplitzOperator& t) {
  // Z T - T Z is supported on row 0 and column n-1 with a zero corner:
  //   row 0, entry k <= n-2 :  t_{n-1-k} - t_{-k-1}
  //   col n-1, entry j >= 1 :  t_{j-n}   - t_j
  // Factor the cross as e_0 h1^* + v e_{n-1}^*.
  const std::size_t n = t.n();
  DisplacementGenerators d;
  d.rho = 2;
  d.G = Matrix(n, 2);
  d.H = Matrix(n, 2);
  d.G(0, 0) = 1.0;
  d.H(n - 1, 1) = 1.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const cplx row0 = t.diag_entry(static_cast<std::ptrdiff_t>(n - 1 - k)) -
                      t.diag_entry(-static_cast<std::ptrdiff_t>(k + 1));
    d.H(k, 0) = std::conj(row0);
  }
  for (std::size_t j = 1; j < n; ++j) {
    d.G(j, 1) = t.diag_entry(static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(n)) -
                t.diag_entry(static_cast<std::ptrdiff_t>(j));
  }
  return d;
}

Matrix dense_toeplitz(const ToeplitzOperator& t, std::size_t guard) {
  const std::size_t n = t.n();
  require(n <= guard, errc::size_guard, "dense materialization above size guard");
  Matrix m(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      m(i, j) = t.diag_entry(static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(j));
  return m;
}

Matrix dense_circulant_shift(std::size_t n) {
  Matrix z(n, n);
  z(0, n - 1) = 1.0;
  for (std::size_t j = 1; j < n; ++j) z(j, j - 1) = 1.0;
  return z;
}

}  // namespace tz
