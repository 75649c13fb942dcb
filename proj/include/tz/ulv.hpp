#ifndef TZ_ULV_HPP
#define TZ_ULV_HPP
//
// Project : tzsolve
// Module  : ulv
// ULV factorization and solve for HSS matrices: generators are first
// orthogonalized, then each block row is reduced by a pair of unitary
// transformations and the remainder merged up the tree; factor once,
// solve many.
//

#include <cstddef>
#include <span>
#include <vector>

#include "tz/hss.hpp"
#include "tz/linalg.hpp"
#include "tz/matrix.hpp"

namespace tz {

/// Replaces every U/V (and transfer) by an orthonormal basis, pushing the
/// triangular corrections into the transfers and coupling blocks. The
/// represented matrix is unchanged.
void hss_orthogonalize(HSSMatrix& h);

struct ULVNode {
  Matrix Q;        // m x m, row reducer from the full QR of the local U
  Matrix Pstar;    // m x m; local solution = Pstar [z; x_keep]
  Matrix L;        // e x e lower triangular (eliminated rows)
  Matrix Dt_elim;  // ru x e
  Matrix Dtl;      // ru x ru, reduced diagonal block passed upward
  Matrix Ut;       // ru x ru triangle of Q^* U
  Matrix Vt_elim;  // e x rv
  Matrix Vt_keep;  // ru x rv
  std::size_t m{0}, ru{0}, rv{0}, e{0};
};

struct ULVFactorization {
  HSSMatrix hss;  // orthogonalized copy (B, R, Wt, tree reused in the solve)
  std::vector<ULVNode> nodes;
  LUFactor root;
  double scale{0.0};
};

ULVFactorization ulv_factor(const HSSMatrix& h);

std::vector<cplx> ulv_solve(const ULVFactorization& f, std::span<const cplx> b);

}  // namespace tz

#endif
