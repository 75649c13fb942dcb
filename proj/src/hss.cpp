#include "tz/hss.hpp"

#include <algorithm>
#include <cmath>

#include "tz/error.hpp"
#include "tz/fadi.hpp"
#include "tz/linalg.hpp"
#include "tz/zolotarev.hpp"

namespace tz {
namespace {

std::vector<cplx> slice(std::span<const cplx> v, IndexRange r) {
  return std::vector<cplx>(v.begin() + static_cast<std::ptrdiff_t>(r.offset),
                           v.begin() + static_cast<std::ptrdiff_t>(r.end()));
}

Matrix row_slice(const Matrix& m, IndexRange r) { return m.block(r.offset, 0, r.size, m.cols()); }

std::vector<cplx> nodes_at(const CauchyLikeOperator& cop, const std::vector<std::size_t>& idx) {
  std::vector<cplx> out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out[i] = cop.ctx.nodes[idx[i]];
  return out;
}

// The per-iteration fADI columns decay geometrically; equalizing their norms
// keeps the row-selection pivoting sensitive to directions whose (small)
// column is paired with a large counterpart in the other factor.
void normalize_columns(Matrix& a) {
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += std::norm(a(i, j));
    s = std::sqrt(s);
    if (s > 0.0)
      for (std::size_t i = 0; i < a.rows(); ++i) a(i, j) /= s;
  }
}

LeafID make_id(Matrix factor, IndexRange range, double rtol, std::size_t max_rank) {
  normalize_columns(factor);
  RowID id = row_interpolation(factor, rtol, max_rank);
  LeafID out;
  out.basis = std::move(id.coeff);
  out.sel.resize(id.rows.size());
  for (std::size_t i = 0; i < id.rows.size(); ++i) out.sel[i] = range.offset + id.rows[i];
  return out;
}

constexpr double kIdPivotTol = 1e-12;

}  // namespace

LeafID leaf_row_id(const CauchyLikeOperator& cop, const ClusterTree& tree, std::size_t v,
                   std::size_t k, std::size_t max_rank) {
  const IndexRange J = tree.range(v);
  const ShiftSchedule shifts = zolotarev_shifts(cop.n(), J, IndexRange{0, 0}, 1, k);
  Matrix z = fadi_row_factor(slice(cop.ctx.nodes, J), row_slice(cop.Gt, J), shifts);
  return make_id(std::move(z), J, kIdPivotTol, max_rank);
}

LeafID leaf_col_id(const CauchyLikeOperator& cop, const ClusterTree& tree, std::size_t v,
                   std::size_t k, std::size_t max_rank) {
  const IndexRange K = tree.range(v);
  const ShiftSchedule shifts = zolotarev_shifts(cop.n(), IndexRange{0, 0}, K, 1, k);
  Matrix w = fadi_col_factor(slice(cop.ctx.nodes, K), row_slice(cop.Ht, K), shifts);
  return make_id(std::move(w), K, kIdPivotTol, max_rank);
}

MergeResult merge_level_rows(const CauchyLikeOperator& cop, const ClusterTree& tree, std::size_t v,
                             const std::vector<std::size_t>& child_sel, std::size_t k,
                             std::size_t max_rank) {
  const IndexRange J = tree.range(v);
  const ShiftSchedule shifts = zolotarev_shifts(cop.n(), J, IndexRange{0, 0}, 1, k);
  Matrix z = fadi_row_factor(nodes_at(cop, child_sel), cop.Gt.rows_at(child_sel), shifts);
  normalize_columns(z);
  RowID id = row_interpolation(z, kIdPivotTol, max_rank);
  MergeResult out;
  out.transfer = std::move(id.coeff);
  out.sel.resize(id.rows.size());
  for (std::size_t i = 0; i < id.rows.size(); ++i) out.sel[i] = child_sel[id.rows[i]];
  return out;
}

MergeResult merge_level_cols(const CauchyLikeOperator& cop, const ClusterTree& tree, std::size_t v,
                             const std::vector<std::size_t>& child_sel, std::size_t k,
                             std::size_t max_rank) {
  const IndexRange K = tree.range(v);
  const ShiftSchedule shifts = zolotarev_shifts(cop.n(), IndexRange{0, 0}, K, 1, k);
  Matrix w = fadi_col_factor(nodes_at(cop, child_sel), cop.Ht.rows_at(child_sel), shifts);
  normalize_columns(w);
  RowID id = row_interpolation(w, kIdPivotTol, max_rank);
  MergeResult out;
  out.transfer = std::move(id.coeff);
  out.sel.resize(id.rows.size());
  for (std::size_t i = 0; i < id.rows.size(); ++i) out.sel[i] = child_sel[id.rows[i]];
  return out;
}

namespace {

Matrix dense_entries(const CauchyLikeOperator& cop, const std::vector<std::size_t>& rows,
                     const std::vector<std::size_t>& cols) {
  Matrix m(rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows.size(); ++i) m(i, j) = cop.entry(rows[i], cols[j]);
  return m;
}

// Residual of the interpolation on a handful of probe columns.
bool probe_ok(const CauchyLikeOperator& cop, IndexRange J, const LeafID& id, bool row_side,
              double tol) {
  const std::size_t n = cop.n();
  const std::vector<std::size_t> probes = {J.end() % n, (J.end() + 7) % n,
                                           (J.offset + n / 2) % n, (J.offset + n - 1) % n};
  Matrix cp(J.size, probes.size());
  for (std::size_t q = 0; q < probes.size(); ++q)
    for (std::size_t i = 0; i < J.size; ++i)
      cp(i, q) = row_side ? cop.entry(J.offset + i, probes[q]) : cop.entry(probes[q], J.offset + i);
  const double scale = cp.frobenius_norm();
  if (scale == 0.0) return true;
  Matrix sel(id.sel.size(), probes.size());
  for (std::size_t q = 0; q < probes.size(); ++q)
    for (std::size_t i = 0; i < id.sel.size(); ++i) sel(i, q) = cp(id.sel[i] - J.offset, q);
  Matrix resid = cp - id.basis * sel;
  return resid.frobenius_norm() <= tol * scale;
}

}  // namespace

std::size_t HSSMatrix::max_rank() const {
  std::size_t r = 0;
  for (const HSSNode& nd : nodes) r = std::max({r, nd.Jsel.size(), nd.Ksel.size()});
  return r;
}

Matrix HSSMatrix::full_row_basis(std::size_t v) const {
  if (tree.is_leaf(v)) return nodes[v].U;
  Matrix left = full_row_basis(ClusterTree::left_child(v));
  Matrix right = full_row_basis(ClusterTree::right_child(v));
  return blkdiag(left, right) * nodes[v].R;
}

Matrix HSSMatrix::full_col_basis(std::size_t v) const {
  if (tree.is_leaf(v)) return nodes[v].V;
  Matrix left = full_col_basis(ClusterTree::left_child(v));
  Matrix right = full_col_basis(ClusterTree::right_child(v));
  return blkdiag(left, right) * nodes[v].Wt;
}

HSSMatrix hss_compress(const CauchyLikeOperator& cop_in, const ClusterTree& tree, double eps,
                       bool accelerate_leaves) {
  const CauchyLikeOperator cop = prune_generators(cop_in);
  const std::size_t n = tree.n();
  require(n == cop.n(), errc::invalid_size, "hss_compress: tree/operator size mismatch");
  const double eps_c = clamp_eps(eps);
  const double eps_v = eps_c / std::log2(static_cast<double>(n));
  const std::size_t rho = cop.rho();
  const std::size_t cap_global = hss_rank_bound(rho, n, eps_c);
  HSSMatrix h;
  h.tree = tree;
  h.nodes.resize(tree.vertex_count());
  for (std::size_t v : tree.leaves())
    h.nodes[v].D = dense_entries(cop, [&] {
      const IndexRange r = tree.range(v);
      std::vector<std::size_t> idx(r.size);
      for (std::size_t i = 0; i < r.size; ++i) idx[i] = r.offset + i;
      return idx;
    }(), [&] {
      const IndexRange r = tree.range(v);
      std::vector<std::size_t> idx(r.size);
      for (std::size_t i = 0; i < r.size; ++i) idx[i] = r.offset + i;
      return idx;
    }());
  const bool zero_gen = cop.Gt.max_abs() == 0.0 || cop.Ht.max_abs() == 0.0;
  if (zero_gen) return h;

  const std::size_t n_min = tree.n_min();
  const std::size_t k_leaf = fadi_iteration_count(n_min, eps_v);
  const std::size_t cap_leaf = std::min(k_leaf * rho, cap_global);

  // Base-matrix acceleration: one fADI per side on the first leaf of the
  // kernel 1/(2i sin(pi (j-k)/n)); other leaves reuse the factor under the
  // generator scalings (the node rotation cancels in the one-sided factor).
  Matrix baseZ, baseW;
  std::vector<cplx> f;
  if (accelerate_leaves) {
    f.resize(n);
    for (std::size_t j = 0; j < n; ++j)
      f[j] = std::polar(1.0, kPi * static_cast<double>(j) / static_cast<double>(n));
    const IndexRange J0 = tree.range(tree.leaves().front());
    Matrix g0(J0.size, 1), h0(J0.size, 1);
    for (std::size_t i = 0; i < J0.size; ++i) {
      g0(i, 0) = f[J0.offset + i];
      h0(i, 0) = std::conj(f[J0.offset + i]);
    }
    const ShiftSchedule rs = zolotarev_shifts(n, J0, IndexRange{0, 0}, 1, k_leaf);
    const ShiftSchedule cs = zolotarev_shifts(n, IndexRange{0, 0}, J0, 1, k_leaf);
    baseZ = fadi_row_factor(slice(cop.ctx.nodes, J0), g0, rs);
    baseW = fadi_col_factor(slice(cop.ctx.nodes, J0), h0, cs);
  }
  const double probe_tol = 1e3 * eps_v;
  for (std::size_t v : tree.leaves()) {
    const IndexRange J = tree.range(v);
    LeafID rid, cid;
    bool done = false;
    if (accelerate_leaves) {
      const std::size_t kr = baseZ.cols();
      Matrix zv(J.size, kr * rho), wv(J.size, kr * rho);
      for (std::size_t c = 0; c < rho; ++c) {
        for (std::size_t q = 0; q < kr; ++q) {
          for (std::size_t i = 0; i < J.size; ++i) {
            const cplx fj = f[J.offset + i];
            zv(i, c * kr + q) = cop.Gt(J.offset + i, c) * std::conj(fj) * baseZ(i, q);
            wv(i, c * kr + q) = cop.Ht(J.offset + i, c) * fj * baseW(i, q);
          }
        }
      }
      rid = make_id(std::move(zv), J, kIdPivotTol, cap_leaf);
      cid = make_id(std::move(wv), J, kIdPivotTol, cap_leaf);
      done = probe_ok(cop, J, rid, true, probe_tol) && probe_ok(cop, J, cid, false, probe_tol);
    }
    if (!done) {
      rid = leaf_row_id(cop, tree, v, k_leaf, cap_leaf);
      cid = leaf_col_id(cop, tree, v, k_leaf, cap_leaf);
    }
    h.nodes[v].U = std::move(rid.basis);
    h.nodes[v].Jsel = std::move(rid.sel);
    h.nodes[v].V = std::move(cid.basis);
    h.nodes[v].Ksel = std::move(cid.sel);
  }

  // Bottom-up merges for internal non-root vertices.
  for (std::size_t lvl = tree.depth(); lvl-- > 1;) {
    for (std::size_t v : tree.level_vertices(lvl)) {
      const std::size_t c1 = ClusterTree::left_child(v);
      const std::size_t c2 = ClusterTree::right_child(v);
      const std::size_t k_v = fadi_iteration_count(tree.range(v).size, eps_v);
      const std::size_t cap = std::min(k_v * rho, cap_global);
      std::vector<std::size_t> jhat = h.nodes[c1].Jsel;
      jhat.insert(jhat.end(), h.nodes[c2].Jsel.begin(), h.nodes[c2].Jsel.end());
      MergeResult mr = merge_level_rows(cop, tree, v, jhat, k_v, cap);
      h.nodes[v].R = std::move(mr.transfer);
      h.nodes[v].Jsel = std::move(mr.sel);
      std::vector<std::size_t> khat = h.nodes[c1].Ksel;
      khat.insert(khat.end(), h.nodes[c2].Ksel.begin(), h.nodes[c2].Ksel.end());
      MergeResult mc = merge_level_cols(cop, tree, v, khat, k_v, cap);
      h.nodes[v].Wt = std::move(mc.transfer);
      h.nodes[v].Ksel = std::move(mc.sel);
    }
  }
  // Coupling blocks, read off the entry formula at the selected indices.
  for (std::size_t v = 1; v < tree.vertex_count(); ++v)
    h.nodes[v].B = dense_entries(cop, h.nodes[v].Jsel, h.nodes[ClusterTree::sibling(v)].Ksel);
  return h;
}

std::vector<cplx> hss_matvec(const HSSMatrix& h, std::span<const cplx> x) {
  const std::size_t n = h.n();
  require(x.size() == n, errc::length_mismatch, "hss_matvec: length mismatch");
  const ClusterTree& tree = h.tree;
  const std::size_t nv = tree.vertex_count();
  std::vector<std::vector<cplx>> xhat(nv), fvec(nv);
  // Up-sweep: xhat_v = V_v^* x_{J_v} through the nested bases.
  for (std::size_t v : tree.leaves()) {
    const IndexRange r = tree.range(v);
    if (!h.nodes[v].V.empty())
      xhat[v] = matvec_adjoint(h.nodes[v].V, x.subspan(r.offset, r.size));
  }
  for (std::size_t lvl = tree.depth(); lvl-- > 1;) {
    for (std::size_t v : tree.level_vertices(lvl)) {
      std::vector<cplx> stacked = xhat[ClusterTree::left_child(v)];
      const std::vector<cplx>& rightv = xhat[ClusterTree::right_child(v)];
      stacked.insert(stacked.end(), rightv.begin(), rightv.end());
      if (!h.nodes[v].Wt.empty()) xhat[v] = matvec_adjoint(h.nodes[v].Wt, stacked);
    }
  }
  // Couple siblings, then push contributions down the row bases.
  for (std::size_t v = 1; v < nv; ++v) {
    const std::vector<cplx>& xs = xhat[ClusterTree::sibling(v)];
    fvec[v] = h.nodes[v].B.empty() ? std::vector<cplx>(h.nodes[v].Jsel.size())
                                   : matvec(h.nodes[v].B, xs);
  }
  std::vector<cplx> y(n);
  for (std::size_t lvl = 1; lvl <= tree.depth(); ++lvl) {
    for (std::size_t v : tree.level_vertices(lvl)) {
      if (tree.is_leaf(v)) {
        const IndexRange r = tree.range(v);
        if (!h.nodes[v].U.empty()) {
          std::vector<cplx> contrib = matvec(h.nodes[v].U, fvec[v]);
          for (std::size_t i = 0; i < r.size; ++i) y[r.offset + i] += contrib[i];
        }
      } else {
        const std::size_t c1 = ClusterTree::left_child(v);
        const std::size_t c2 = ClusterTree::right_child(v);
        if (h.nodes[v].R.empty()) continue;
        std::vector<cplx> expanded = matvec(h.nodes[v].R, fvec[v]);
        const std::size_t p1 = h.nodes[c1].Jsel.size();
        for (std::size_t i = 0; i < p1; ++i) fvec[c1][i] += expanded[i];
        for (std::size_t i = p1; i < expanded.size(); ++i) fvec[c2][i - p1] += expanded[i];
      }
    }
  }
  for (std::size_t v : tree.leaves()) {
    const IndexRange r = tree.range(v);
    std::vector<cplx> dx = matvec(h.nodes[v].D, x.subspan(r.offset, r.size));
    for (std::size_t i = 0; i < r.size; ++i) y[r.offset + i] += dx[i];
  }
  return y;
}

Matrix hss_to_dense(const HSSMatrix& h, std::size_t guard) {
  const std::size_t n = h.n();
  require(n <= guard, errc::size_guard, "hss_to_dense above size guard");
  const ClusterTree& tree = h.tree;
  Matrix out(n, n);
  for (std::size_t v : tree.leaves()) {
    const IndexRange r = tree.range(v);
    out.set_block(r.offset, r.offset, h.nodes[v].D);
  }
  for (std::size_t v = 1; v < tree.vertex_count(); ++v) {
    if (h.nodes[v].B.empty()) continue;
    const std::size_t s = ClusterTree::sibling(v);
    Matrix block = h.full_row_basis(v) * h.nodes[v].B * h.full_col_basis(s).adjoint();
    out.set_block(tree.range(v).offset, tree.range(s).offset, block);
  }
  return out;
}

}  // namespace tz
