#ifndef TZ_LINALG_HPP
#define TZ_LINALG_HPP
//
// Project : tzsolve
// Module  : linalg
// Householder QR (thin/full), column-pivoted QR with early termination,
// LU with partial pivoting, and row interpolative decompositions.
//

#include <cstddef>
#include <span>
#include <vector>

#include "tz/matrix.hpp"

namespace tz {

struct ThinQR {
  Matrix Q;  // m x min(m,n), orthonormal columns
  Matrix R;  // min(m,n) x n, upper trapezoidal
};
ThinQR thin_qr(const Matrix& a);

/// Full QR: a = Q [R; 0] with Q m x m unitary, R min(m,n) x n.
struct FullQR {
  Matrix Q;
  Matrix R;
};
FullQR full_qr(const Matrix& a);

struct CPQR {
  Matrix Q;                       // m x rank
  Matrix R;                       // rank x n (columns in pivot order)
  std::vector<std::size_t> perm;  // pivot order, length n
  std::size_t rank{0};
};
/// Column-pivoted QR, stopping when the residual column norm drops below
/// rtol times the first pivot norm, or at max_rank columns.
CPQR cpqr(const Matrix& a, double rtol, std::size_t max_rank);

struct LUFactor {
  Matrix lu;
  std::vector<std::size_t> piv;
  double min_pivot{0.0};
  double scale{0.0};  // max |entry| of the input
};
LUFactor lu_factor(Matrix a);
std::vector<cplx> lu_apply(const LUFactor& f, std::span<const cplx> b);
/// Solve a X = b, partial pivoting. Throws SINGULAR on exact breakdown.
Matrix lu_solve(const Matrix& a, const Matrix& b);
std::vector<cplx> lu_solve(const Matrix& a, std::span<const cplx> b);

/// Solve R x = b with R upper triangular (rank x rank leading block used).
Matrix solve_upper(const Matrix& r, const Matrix& b);

/// Row interpolative decomposition: z ~= coeff * z(rows, :), with
/// coeff(rows, :) = I. Selection by CPQR applied to z^*.
struct RowID {
  Matrix coeff;                   // m x r
  std::vector<std::size_t> rows;  // r selected row indices of z
};
RowID row_interpolation(const Matrix& z, double rtol, std::size_t max_rank);

}  // namespace tz

#endif
