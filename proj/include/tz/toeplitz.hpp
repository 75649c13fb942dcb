#ifndef TZ_TOEPLITZ_HPP
#define TZ_TOEPLITZ_HPP
//
// Project : tzsolve
// Module  : toeplitz_core
// Toeplitz operators, their displacement generators with respect to the unit
// circulant shift Z, and dense reference materialization.
//

#include <cstddef>
#include <vector>

#include "tz/matrix.hpp"
#include "tz/types.hpp"

namespace tz {

/// T(j,k) = col[j-k] for j >= k, row[k-j] otherwise.
/// col = (t_0, t_1, ..., t_{n-1}), row = (t_0, t_{-1}, ..., t_{-n+1}).
class ToeplitzOperator {
 public:
  ToeplitzOperator(std::vector<cplx> col, std::vector<cplx> row);

  std::size_t n() const noexcept { return col_.size(); }
  const std::vector<cplx>& col() const noexcept { return col_; }
  const std::vector<cplx>& row() const noexcept { return row_; }

  /// Entry access by signed diagonal index k in (-n, n): t_k.
  cplx diag_entry(std::ptrdiff_t k) const;

 private:
  std::vector<cplx> col_, row_;
};

ToeplitzOperator make_toeplitz(std::vector<cplx> col, std::vector<cplx> row);

/// Z T - T Z = G H^* with rho <= 2.
struct DisplacementGenerators {
  Matrix G;  // n x rho
  Matrix H;  // n x rho
  std::size_t rho{0};
};

DisplacementGenerators toeplitz_generators(const ToeplitzOperator& t);

inline constexpr std::size_t kDenseSizeGuard = 8192;

Matrix dense_toeplitz(const ToeplitzOperator& t, std::size_t guard = kDenseSizeGuard);

/// Unit circulant shift: Z[0][n-1] = 1, Z[j][j-1] = 1.
Matrix dense_circulant_shift(std::size_t n);

}  // namespace tz

#endif
