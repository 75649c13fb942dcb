#ifndef TZ_FADI_HPP
#define TZ_FADI_HPP
//
// Project : tzsolve
// Module  : fadi
// Factored ADI for Sylvester equations D_J X - X D_K = G_J H_K^* with
// diagonal coefficients; the one-sided variant builds only the row factor.
//

#include <span>
#include <vector>

#include "tz/matrix.hpp"
#include "tz/types.hpp"
#include "tz/zolotarev.hpp"

namespace tz {

struct DiagonalSylvester {
  std::vector<cplx> dJ;
  std::vector<cplx> dK;
  Matrix GJ;  // |J| x rho
  Matrix HK;  // |K| x rho
};

/// X ~= Z W^*.
struct LowRankFactors {
  Matrix Z;  // |J| x (k rho)
  Matrix W;  // |K| x (k rho)
};

LowRankFactors fadi(const DiagonalSylvester& sys, const ShiftSchedule& shifts);

/// Row factor only; bitwise identical to the Z of the full iteration.
Matrix fadi_row_factor(std::span<const cplx> dJ, const Matrix& gJ, const ShiftSchedule& shifts);

/// Column factor only; bitwise identical to the W of the full iteration.
Matrix fadi_col_factor(std::span<const cplx> dK, const Matrix& hK, const ShiftSchedule& shifts);

}  // namespace tz

#endif
