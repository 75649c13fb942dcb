#ifndef TZ_HSS_HPP
#define TZ_HSS_HPP
//
// Project : tzsolve
// Module  : hss
// HSS compression of a Cauchy-like matrix through fADI-based interpolative
// decompositions: one-sided fADI factors per HSS row/column, subset selection
// by column-pivoted QR, bottom-up merges into nested bases, and direct
// evaluation of the coupling blocks from the Cauchy entry formula.
//

#include <cstddef>
#include <span>
#include <vector>

#include "tz/hierarchy.hpp"
#include "tz/matrix.hpp"
#include "tz/spectral.hpp"

namespace tz {

struct HSSNode {
  Matrix D;   // leaves: dense diagonal block
  Matrix U;   // leaves: row basis with identity at the selected local rows
  Matrix V;   // leaves: column basis, same structure
  Matrix R;   // internal non-root: row transfer, U_v = blkdiag(U_c) R
  Matrix Wt;  // internal non-root: column transfer
  Matrix B;   // non-root: C(Jsel_v, Ksel_sibling)
  std::vector<std::size_t> Jsel, Ksel;  // selected global row/col indices
};

struct HSSMatrix {
  ClusterTree tree;
  std::vector<HSSNode> nodes;

  std::size_t n() const noexcept { return tree.n(); }
  std::size_t max_rank() const;
  /// Densified nested row/column basis of vertex v.
  Matrix full_row_basis(std::size_t v) const;
  Matrix full_col_basis(std::size_t v) const;
};

struct LeafID {
  Matrix basis;  // coefficient matrix with identity at the selected rows
  std::vector<std::size_t> sel;  // selected global indices
};

LeafID leaf_row_id(const CauchyLikeOperator& cop, const ClusterTree& tree, std::size_t v,
                   std::size_t k, std::size_t max_rank);
LeafID leaf_col_id(const CauchyLikeOperator& cop, const ClusterTree& tree, std::size_t v,
                   std::size_t k, std::size_t max_rank);

struct MergeResult {
  Matrix transfer;  // (|Jsel_c1| + |Jsel_c2|) x p
  std::vector<std::size_t> sel;  // promoted global indices
};

MergeResult merge_level_rows(const CauchyLikeOperator& cop, const ClusterTree& tree, std::size_t v,
                             const std::vector<std::size_t>& child_sel, std::size_t k,
                             std::size_t max_rank);
MergeResult merge_level_cols(const CauchyLikeOperator& cop, const ClusterTree& tree, std::size_t v,
                             const std::vector<std::size_t>& child_sel, std::size_t k,
                             std::size_t max_rank);

HSSMatrix hss_compress(const CauchyLikeOperator& cop, const ClusterTree& tree, double eps,
                       bool accelerate_leaves = false);

std::vector<cplx> hss_matvec(const HSSMatrix& h, std::span<const cplx> x);

inline constexpr std::size_t kHssDenseGuard = 4096;
Matrix hss_to_dense(const HSSMatrix& h, std::size_t guard = kHssDenseGuard);

}  // namespace tz

#endif
