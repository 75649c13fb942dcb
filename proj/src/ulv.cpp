#include "tz/ulv.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tz/error.hpp"

namespace tz {
namespace {

constexpr double kSingularTol = 1e-14;

// Applies the triangular correction t to the parent transfer rows owned by v.
void scale_parent_rows(Matrix& parent_transfer, bool is_left, std::size_t my_rows,
                       const Matrix& t) {
  if (parent_transfer.empty() || t.empty()) return;
  const std::size_t i0 = is_left ? 0 : parent_transfer.rows() - my_rows;
  Matrix rows = parent_transfer.block(i0, 0, my_rows, parent_transfer.cols());
  parent_transfer.set_block(i0, 0, t * rows);
}

std::vector<cplx> solve_lower_vec(const Matrix& l, std::span<const cplx> b) {
  const std::size_t n = l.rows();
  std::vector<cplx> x(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) x[i] -= l(i, j) * x[j];
    x[i] /= l(i, i);
  }
  return x;
}

}  // namespace

void hss_orthogonalize(HSSMatrix& h) {
  const ClusterTree& tree = h.tree;
  for (std::size_t lvl = tree.depth(); lvl >= 1; --lvl) {
    for (std::size_t v : tree.level_vertices(lvl)) {
      HSSNode& nd = h.nodes[v];
      const std::size_t pa = ClusterTree::parent(v);
      const bool is_left = (v % 2 == 1);
      // Row side: orthogonalize the stored basis (U at leaves, R above).
      {
        Matrix& basis = tree.is_leaf(v) ? nd.U : nd.R;
        if (!basis.empty()) {
          ThinQR qr = thin_qr(basis);
          const std::size_t p = basis.cols();
          basis = std::move(qr.Q);
          if (!nd.B.empty()) nd.B = qr.R * nd.B;
          if (pa != 0) scale_parent_rows(h.nodes[pa].R, is_left, p, qr.R);
        }
      }
      // Column side.
      {
        Matrix& basis = tree.is_leaf(v) ? nd.V : nd.Wt;
        if (!basis.empty()) {
          ThinQR qr = thin_qr(basis);
          const std::size_t p = basis.cols();
          basis = std::move(qr.Q);
          Matrix& sib_b = h.nodes[ClusterTree::sibling(v)].B;
          if (!sib_b.empty()) sib_b = sib_b * qr.R.adjoint();
          if (pa != 0) scale_parent_rows(h.nodes[pa].Wt, is_left, p, qr.R);
        }
      }
    }
  }
}

ULVFactorization ulv_factor(const HSSMatrix& h) {
  ULVFactorization f;
  f.hss = h;
  hss_orthogonalize(f.hss);
  const HSSMatrix& hs = f.hss;
  const ClusterTree& tree = hs.tree;
  const std::size_t nv = tree.vertex_count();
  f.nodes.resize(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    f.scale = std::max(f.scale, hs.nodes[v].D.max_abs());
    f.scale = std::max(f.scale, hs.nodes[v].B.max_abs());
  }
  for (std::size_t lvl = tree.depth() + 1; lvl-- > 0;) {
    for (std::size_t v : tree.level_vertices(lvl)) {
      ULVNode& un = f.nodes[v];
      Matrix dloc, uloc, vloc;
      if (tree.is_leaf(v)) {
        dloc = hs.nodes[v].D;
        uloc = hs.nodes[v].U;
        vloc = hs.nodes[v].V;
      } else {
        const std::size_t c1 = ClusterTree::left_child(v);
        const std::size_t c2 = ClusterTree::right_child(v);
        const ULVNode& u1 = f.nodes[c1];
        const ULVNode& u2 = f.nodes[c2];
        dloc = Matrix(u1.ru + u2.ru, u1.ru + u2.ru);
        dloc.set_block(0, 0, u1.Dtl);
        dloc.set_block(u1.ru, u1.ru, u2.Dtl);
        if (!hs.nodes[c1].B.empty())
          dloc.set_block(0, u1.ru, u1.Ut * hs.nodes[c1].B * u2.Vt_keep.adjoint());
        if (!hs.nodes[c2].B.empty())
          dloc.set_block(u1.ru, 0, u2.Ut * hs.nodes[c2].B * u1.Vt_keep.adjoint());
        if (v != 0) {
          uloc = blkdiag(u1.Ut, u2.Ut) * hs.nodes[v].R;
          vloc = blkdiag(u1.Vt_keep, u2.Vt_keep) * hs.nodes[v].Wt;
        }
      }
      const std::size_t m = dloc.rows();
      un.m = m;
      if (v == 0) {
        // Root: direct dense factorization of the final reduced system.
        if (m > 0) {
          f.root = lu_factor(dloc);
          require(f.root.min_pivot > kSingularTol * std::max(f.scale, f.root.scale),
                  errc::singular_block, "ulv_factor: singular root block");
        }
        continue;
      }
      un.ru = uloc.cols();
      un.rv = vloc.cols();
      un.e = m - un.ru;
      FullQR fq = full_qr(uloc.empty() ? Matrix(m, 0) : uloc);
      un.Q = std::move(fq.Q);
      un.Ut = fq.R;  // ru x ru upper triangle
      Matrix dhat = un.Q.adjoint() * dloc;
      Matrix dhat_top = dhat.block(0, 0, un.ru, m);
      Matrix dhat_bot = dhat.block(un.ru, 0, un.e, m);
      FullQR fb = full_qr(dhat_bot.adjoint());
      un.Pstar = std::move(fb.Q);  // local solution = Pstar [z; x_keep]
      un.L = fb.R.adjoint();       // e x e lower triangular
      const double tol = kSingularTol * std::max(f.scale, f.scale == 0.0 ? 1.0 : 0.0);
      for (std::size_t i = 0; i < un.e; ++i)
        require(std::abs(un.L(i, i)) > tol, errc::singular_block,
                "ulv_factor: singular block at vertex " + std::to_string(v));
      Matrix mtop = dhat_top * un.Pstar;  // ru x m
      un.Dt_elim = mtop.block(0, 0, un.ru, un.e);
      un.Dtl = mtop.block(0, un.e, un.ru, un.ru);
      Matrix vt = vloc.empty() ? Matrix(m, 0) : un.Pstar.adjoint() * vloc;
      un.Vt_elim = vt.block(0, 0, un.e, un.rv);
      un.Vt_keep = vt.block(un.e, 0, un.ru, un.rv);
    }
  }
  return f;
}

std::vector<cplx> ulv_solve(const ULVFactorization& f, std::span<const cplx> b) {
  const HSSMatrix& hs = f.hss;
  const ClusterTree& tree = hs.tree;
  const std::size_t n = tree.n();
  require(b.size() == n, errc::length_mismatch, "ulv_solve: length mismatch");
  const std::size_t nv = tree.vertex_count();
  std::vector<std::vector<cplx>> z(nv), kpart(nv), rhs_top(nv), local(nv);

  auto eliminate = [&f](std::size_t v, std::vector<cplx> bloc) {
    const ULVNode& un = f.nodes[v];
    std::vector<cplx> bhat = matvec_adjoint(un.Q, bloc);
    std::vector<cplx> bbot(bhat.begin() + static_cast<std::ptrdiff_t>(un.ru), bhat.end());
    std::vector<cplx> zv = solve_lower_vec(un.L, bbot);
    std::vector<cplx> top(bhat.begin(), bhat.begin() + static_cast<std::ptrdiff_t>(un.ru));
    const std::vector<cplx> corr = matvec(un.Dt_elim, zv);
    for (std::size_t i = 0; i < top.size(); ++i) top[i] -= corr[i];
    return std::pair<std::vector<cplx>, std::vector<cplx>>{std::move(zv), std::move(top)};
  };

  // Upward sweep: eliminate at each non-root vertex, merge remainders.
  for (std::size_t lvl = tree.depth() + 1; lvl-- > 0;) {
    for (std::size_t v : tree.level_vertices(lvl)) {
      std::vector<cplx> bloc;
      std::vector<cplx> kbase;
      if (tree.is_leaf(v)) {
        const IndexRange r = tree.range(v);
        bloc.assign(b.begin() + static_cast<std::ptrdiff_t>(r.offset),
                    b.begin() + static_cast<std::ptrdiff_t>(r.end()));
        kbase.assign(f.nodes[v].rv, cplx(0.0));
      } else {
        const std::size_t c1 = ClusterTree::left_child(v);
        const std::size_t c2 = ClusterTree::right_child(v);
        std::vector<cplx> r1 = rhs_top[c1];
        std::vector<cplx> r2 = rhs_top[c2];
        if (!hs.nodes[c1].B.empty()) {
          const std::vector<cplx> corr = matvec(f.nodes[c1].Ut, matvec(hs.nodes[c1].B, kpart[c2]));
          for (std::size_t i = 0; i < r1.size(); ++i) r1[i] -= corr[i];
        }
        if (!hs.nodes[c2].B.empty()) {
          const std::vector<cplx> corr = matvec(f.nodes[c2].Ut, matvec(hs.nodes[c2].B, kpart[c1]));
          for (std::size_t i = 0; i < r2.size(); ++i) r2[i] -= corr[i];
        }
        bloc = std::move(r1);
        bloc.insert(bloc.end(), r2.begin(), r2.end());
        if (v != 0) {
          std::vector<cplx> stacked = kpart[c1];
          stacked.insert(stacked.end(), kpart[c2].begin(), kpart[c2].end());
          kbase = matvec_adjoint(hs.nodes[v].Wt, stacked);
        }
      }
      if (v == 0) {
        local[0] = bloc.empty() ? std::vector<cplx>{} : lu_apply(f.root, bloc);
        continue;
      }
      auto [zv, top] = eliminate(v, std::move(bloc));
      const std::vector<cplx> kz = matvec_adjoint(f.nodes[v].Vt_elim, zv);
      for (std::size_t i = 0; i < kbase.size(); ++i) kbase[i] += kz[i];
      z[v] = std::move(zv);
      rhs_top[v] = std::move(top);
      kpart[v] = std::move(kbase);
    }
  }

  // Downward sweep: recover local solutions from [z; x_keep].
  std::vector<cplx> x(n);
  for (std::size_t lvl = 0; lvl <= tree.depth(); ++lvl) {
    for (std::size_t v : tree.level_vertices(lvl)) {
      if (v != 0) {
        const std::size_t pa = ClusterTree::parent(v);
        const bool is_left = (v % 2 == 1);
        const ULVNode& un = f.nodes[v];
        const std::vector<cplx>& up = local[pa];
        const std::size_t off = is_left ? 0 : up.size() - un.ru;
        std::vector<cplx> zu = z[v];
        zu.insert(zu.end(), up.begin() + static_cast<std::ptrdiff_t>(off),
                  up.begin() + static_cast<std::ptrdiff_t>(off + un.ru));
        local[v] = matvec(un.Pstar, zu);
      }
      if (tree.is_leaf(v)) {
        const IndexRange r = tree.range(v);
        for (std::size_t i = 0; i < r.size; ++i) x[r.offset + i] = local[v][i];
      }
    }
  }
  return x;
}

}  // namespace tz
