#ifndef TZ_HODLR_HPP
#define TZ_HODLR_HPP
//
// Project : tzsolve
// Module  : hodlr
// HODLR compression of a Cauchy-like matrix: per-block fADI, and the
// base-matrix accelerated variant that runs one fADI per tree level and
// re-targets it to every block through Hadamard diagonal scalings.
//

#include <cstddef>
#include <span>
#include <vector>

#include "tz/hierarchy.hpp"
#include "tz/matrix.hpp"
#include "tz/spectral.hpp"

namespace tz {

/// Evaluated form: block (J_v, J_sibling(v)) ~= Z[v] W[v]^*.
/// Implicit form (fast path only): one factor pair per level plus the
/// rescaled generators; blocks are recovered through diagonal scalings.
struct HODLRMatrix {
  ClusterTree tree;
  std::vector<Matrix> Z, W;     // per vertex; empty at the root
  std::vector<Matrix> diag;     // per vertex; dense blocks at the leaves
  std::vector<std::size_t> rank;  // per vertex: stored block rank

  bool implicit_mode{false};
  std::vector<Matrix> levelZ, levelW;  // per level (index 1..depth used)
  std::vector<cplx> f;                 // omega^j
  Matrix Ghat, Hhat;                   // n x rho rescaled generators

  std::size_t n() const noexcept { return tree.n(); }
  std::size_t max_rank() const;
};

HODLRMatrix hodlr_compress(const CauchyLikeOperator& cop, const ClusterTree& tree, double eps);

/// One fADI per level on the base matrix; evaluated=false keeps the implicit
/// scaled representation (matvec-only workloads).
HODLRMatrix hodlr_compress_fast(const CauchyLikeOperator& cop, const ClusterTree& tree, double eps,
                                bool evaluated = true);

std::vector<cplx> hodlr_matvec(const HODLRMatrix& h, std::span<const cplx> x);

Matrix hodlr_to_dense(const HODLRMatrix& h, std::size_t guard = kDenseSizeGuard);

/// Dense block C(rows, cols) straight from the operator's entry formula.
Matrix dense_block(const CauchyLikeOperator& cop, IndexRange rows, IndexRange cols);

}  // namespace tz

#endif
