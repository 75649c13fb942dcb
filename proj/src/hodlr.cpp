#include "tz/hodlr.hpp"

#include <cmath>

#include "tz/error.hpp"
#include "tz/fadi.hpp"
#include "tz/zolotarev.hpp"

namespace tz {
namespace {

std::vector<cplx> slice(std::span<const cplx> v, IndexRange r) {
  return std::vector<cplx>(v.begin() + static_cast<std::ptrdiff_t>(r.offset),
                           v.begin() + static_cast<std::ptrdiff_t>(r.end()));
}

Matrix row_slice(const Matrix& m, IndexRange r) { return m.block(r.offset, 0, r.size, m.cols()); }

double level_eps(double eps, std::size_t n) {
  return clamp_eps(eps) / std::log2(static_cast<double>(n));
}

}  // namespace

Matrix dense_block(const CauchyLikeOperator& cop, IndexRange rows, IndexRange cols) {
  Matrix m(rows.size, cols.size);
  for (std::size_t j = 0; j < cols.size; ++j)
    for (std::size_t i = 0; i < rows.size; ++i)
      m(i, j) = cop.entry(rows.offset + i, cols.offset + j);
  return m;
}

std::size_t HODLRMatrix::max_rank() const {
  std::size_t r = 0;
  for (std::size_t v : rank) r = std::max(r, v);
  return r;
}

HODLRMatrix hodlr_compress(const CauchyLikeOperator& cop_in, const ClusterTree& tree, double eps) {
  const CauchyLikeOperator cop = prune_generators(cop_in);
  const std::size_t n = tree.n();
  require(n == cop.n(), errc::invalid_size, "hodlr_compress: tree/operator size mismatch");
  const double eps_v = level_eps(eps, n);
  HODLRMatrix h;
  h.tree = tree;
  const std::size_t nv = tree.vertex_count();
  h.Z.resize(nv);
  h.W.resize(nv);
  h.diag.resize(nv);
  h.rank.assign(nv, 0);
  const bool zero_gen = cop.Gt.max_abs() == 0.0 || cop.Ht.max_abs() == 0.0;
  for (std::size_t v = 1; v < nv; ++v) {
    const IndexRange J = tree.range(v);
    const IndexRange K = tree.range(ClusterTree::sibling(v));
    if (zero_gen) continue;
    const std::size_t k = fadi_iteration_count(J.size, eps_v);
    const ShiftSchedule shifts = zolotarev_shifts(n, J, K, 1, k);
    DiagonalSylvester sys;
    sys.dJ = slice(cop.ctx.nodes, J);
    sys.dK = slice(cop.ctx.nodes, K);
    sys.GJ = row_slice(cop.Gt, J);
    sys.HK = row_slice(cop.Ht, K);
    LowRankFactors f = fadi(sys, shifts);
    h.rank[v] = f.Z.cols();
    h.Z[v] = std::move(f.Z);
    h.W[v] = std::move(f.W);
  }
  for (std::size_t v : tree.leaves()) h.diag[v] = dense_block(cop, tree.range(v), tree.range(v));
  return h;
}

HODLRMatrix hodlr_compress_fast(const CauchyLikeOperator& cop_in, const ClusterTree& tree,
                                double eps, bool evaluated) {
  const CauchyLikeOperator cop = prune_generators(cop_in);
  const std::size_t n = tree.n();
  require(n == cop.n(), errc::invalid_size, "hodlr_compress: tree/operator size mismatch");
  const double eps_v = level_eps(eps, n);
  const std::size_t rho = cop.rho();
  HODLRMatrix h;
  h.tree = tree;
  const std::size_t nv = tree.vertex_count();
  h.Z.resize(nv);
  h.W.resize(nv);
  h.diag.resize(nv);
  h.rank.assign(nv, 0);
  // f_j = omega^j; base matrix entries 1/(2i sin(pi (j-k)/n)) satisfy the
  // same displacement equation with rank-one right-hand side f_J f_K^T.
  h.f.resize(n);
  for (std::size_t j = 0; j < n; ++j)
    h.f[j] = std::polar(1.0, kPi * static_cast<double>(j) / static_cast<double>(n));
  h.Ghat = Matrix(n, rho);
  h.Hhat = Matrix(n, rho);
  for (std::size_t c = 0; c < rho; ++c) {
    for (std::size_t j = 0; j < n; ++j) {
      h.Ghat(j, c) = cop.Gt(j, c) * std::conj(h.f[j]);
      h.Hhat(j, c) = cop.Ht(j, c) * h.f[j];
    }
  }
  h.levelZ.resize(tree.depth() + 1);
  h.levelW.resize(tree.depth() + 1);
  const bool zero_gen = cop.Gt.max_abs() == 0.0 || cop.Ht.max_abs() == 0.0;
  for (std::size_t lvl = 1; !zero_gen && lvl <= tree.depth(); ++lvl) {
    // One fADI on the first upper block of the base matrix; every congruent
    // block at this level shares the factors (the kernel depends only on
    // j - k, and the rotation of nodes and shifts cancels in Z W^*).
    const std::size_t v = tree.level_vertices(lvl)[0];
    const IndexRange J = tree.range(v);
    const IndexRange K = tree.range(ClusterTree::sibling(v));
    const std::size_t k = fadi_iteration_count(J.size, eps_v);
    const ShiftSchedule shifts = zolotarev_shifts(n, J, K, 1, k);
    DiagonalSylvester sys;
    sys.dJ = slice(cop.ctx.nodes, J);
    sys.dK = slice(cop.ctx.nodes, K);
    sys.GJ = Matrix(J.size, 1);
    sys.HK = Matrix(K.size, 1);
    for (std::size_t i = 0; i < J.size; ++i) sys.GJ(i, 0) = h.f[J.offset + i];
    for (std::size_t i = 0; i < K.size; ++i) sys.HK(i, 0) = std::conj(h.f[K.offset + i]);
    LowRankFactors lf = fadi(sys, shifts);
    h.levelZ[lvl] = std::move(lf.Z);
    h.levelW[lvl] = std::move(lf.W);
  }
  for (std::size_t v = 1; v < nv; ++v) {
    if (zero_gen) break;
    const std::size_t lvl = tree.level(v);
    h.rank[v] = h.levelZ[lvl].cols() * rho;
  }
  if (evaluated && !zero_gen) {
    for (std::size_t v = 1; v < nv; ++v) {
      const std::size_t lvl = tree.level(v);
      const IndexRange J = tree.range(v);
      const IndexRange K = tree.range(ClusterTree::sibling(v));
      // v odd: upper block (left rows, right cols) uses (Z, W); v even:
      // lower block reuses the sibling factors conjugate-transposed.
      const Matrix& baseZ = (v % 2 == 1) ? h.levelZ[lvl] : h.levelW[lvl];
      const Matrix& baseW = (v % 2 == 1) ? h.levelW[lvl] : h.levelZ[lvl];
      const std::size_t kr = baseZ.cols();
      Matrix zv(J.size, kr * rho), wv(K.size, kr * rho);
      for (std::size_t c = 0; c < rho; ++c) {
        for (std::size_t q = 0; q < kr; ++q) {
          for (std::size_t i = 0; i < J.size; ++i)
            zv(i, c * kr + q) = h.Ghat(J.offset + i, c) * baseZ(i, q);
          for (std::size_t i = 0; i < K.size; ++i)
            wv(i, c * kr + q) = h.Hhat(K.offset + i, c) * baseW(i, q);
        }
      }
      h.Z[v] = std::move(zv);
      h.W[v] = std::move(wv);
    }
    h.levelZ.clear();
    h.levelW.clear();
  } else {
    h.implicit_mode = !zero_gen;
  }
  for (std::size_t v : tree.leaves()) h.diag[v] = dense_block(cop, tree.range(v), tree.range(v));
  return h;
}

std::vector<cplx> hodlr_matvec(const HODLRMatrix& h, std::span<const cplx> x) {
  const std::size_t n = h.n();
  require(x.size() == n, errc::length_mismatch, "hodlr_matvec: length mismatch");
  std::vector<cplx> y(n);
  const ClusterTree& tree = h.tree;
  for (std::size_t v : tree.leaves()) {
    const IndexRange r = tree.range(v);
    const Matrix& d = h.diag[v];
    for (std::size_t j = 0; j < r.size; ++j) {
      const cplx xj = x[r.offset + j];
      for (std::size_t i = 0; i < r.size; ++i) y[r.offset + i] += d(i, j) * xj;
    }
  }
  const std::size_t rho = h.Ghat.cols();
  for (std::size_t v = 1; v < tree.vertex_count(); ++v) {
    const IndexRange J = tree.range(v);
    const IndexRange K = tree.range(ClusterTree::sibling(v));
    if (!h.implicit_mode) {
      const Matrix& zv = h.Z[v];
      const Matrix& wv = h.W[v];
      if (zv.empty()) continue;
      std::vector<cplx> t(zv.cols());
      for (std::size_t c = 0; c < wv.cols(); ++c) {
        cplx s = 0.0;
        for (std::size_t i = 0; i < K.size; ++i) s += std::conj(wv(i, c)) * x[K.offset + i];
        t[c] = s;
      }
      for (std::size_t c = 0; c < zv.cols(); ++c) {
        const cplx tc = t[c];
        if (tc == cplx(0.0)) continue;
        for (std::size_t i = 0; i < J.size; ++i) y[J.offset + i] += zv(i, c) * tc;
      }
    } else {
      const std::size_t lvl = tree.level(v);
      const Matrix& baseZ = (v % 2 == 1) ? h.levelZ[lvl] : h.levelW[lvl];
      const Matrix& baseW = (v % 2 == 1) ? h.levelW[lvl] : h.levelZ[lvl];
      if (baseZ.empty()) continue;
      const std::size_t kr = baseZ.cols();
      for (std::size_t c = 0; c < rho; ++c) {
        std::vector<cplx> t(kr);
        for (std::size_t q = 0; q < kr; ++q) {
          cplx s = 0.0;
          for (std::size_t i = 0; i < K.size; ++i)
            s += std::conj(h.Hhat(K.offset + i, c) * baseW(i, q)) * x[K.offset + i];
          t[q] = s;
        }
        for (std::size_t q = 0; q < kr; ++q) {
          const cplx tq = t[q];
          if (tq == cplx(0.0)) continue;
          for (std::size_t i = 0; i < J.size; ++i)
            y[J.offset + i] += h.Ghat(J.offset + i, c) * baseZ(i, q) * tq;
        }
      }
    }
  }
  return y;
}

namespace {

// Evaluated factors of block v, materialized from the implicit form if needed.
std::pair<Matrix, Matrix> block_factors(const HODLRMatrix& h, std::size_t v) {
  if (!h.implicit_mode) return {h.Z[v], h.W[v]};
  const ClusterTree& tree = h.tree;
  const std::size_t lvl = tree.level(v);
  const Matrix& baseZ = (v % 2 == 1) ? h.levelZ[lvl] : h.levelW[lvl];
  const Matrix& baseW = (v % 2 == 1) ? h.levelW[lvl] : h.levelZ[lvl];
  if (baseZ.empty()) return {Matrix(), Matrix()};
  const IndexRange J = tree.range(v);
  const IndexRange K = tree.range(ClusterTree::sibling(v));
  const std::size_t rho = h.Ghat.cols();
  const std::size_t kr = baseZ.cols();
  Matrix zv(J.size, kr * rho), wv(K.size, kr * rho);
  for (std::size_t c = 0; c < rho; ++c) {
    for (std::size_t q = 0; q < kr; ++q) {
      for (std::size_t i = 0; i < J.size; ++i)
        zv(i, c * kr + q) = h.Ghat(J.offset + i, c) * baseZ(i, q);
      for (std::size_t i = 0; i < K.size; ++i)
        wv(i, c * kr + q) = h.Hhat(K.offset + i, c) * baseW(i, q);
    }
  }
  return {std::move(zv), std::move(wv)};
}

}  // namespace

Matrix hodlr_to_dense(const HODLRMatrix& h, std::size_t guard) {
  const std::size_t n = h.n();
  require(n <= guard, errc::size_guard, "hodlr_to_dense above size guard");
  Matrix out(n, n);
  const ClusterTree& tree = h.tree;
  for (std::size_t v : tree.leaves()) out.set_block(tree.range(v).offset, tree.range(v).offset,
                                                    h.diag[v]);
  for (std::size_t v = 1; v < tree.vertex_count(); ++v) {
    auto [zv, wv] = block_factors(h, v);
    if (zv.empty()) continue;
    const IndexRange J = tree.range(v);
    const IndexRange K = tree.range(ClusterTree::sibling(v));
    for (std::size_t c = 0; c < zv.cols(); ++c) {
      for (std::size_t j = 0; j < K.size; ++j) {
        const cplx wc = std::conj(wv(j, c));
        for (std::size_t i = 0; i < J.size; ++i) out(J.offset + i, K.offset + j) += zv(i, c) * wc;
      }
    }
  }
  return out;
}

}  // namespace tz
