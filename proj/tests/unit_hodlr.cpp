#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "support/testutil.hpp"
#include "tz/hierarchy.hpp"
#include "tz/hodlr.hpp"
#include "tz/oracle.hpp"
#include "tz/spectral.hpp"
#include "tz/zolotarev.hpp"

using tz::cplx;
using tz::Matrix;

namespace {

double wall_seconds(const std::function<void()>& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

TEST_CASE("hodlr_compress: identity input") {
  std::vector<cplx> e(256, cplx(0));
  e[0] = 1;
  const auto cop = tz::to_cauchy_like(tz::make_toeplitz(e, e));
  const auto tree = tz::build_tree(256, 32);
  const auto h = tz::hodlr_compress(cop, tree, 1e-8);
  CHECK(h.max_rank() == 0);
  for (std::size_t v : tree.leaves()) {
    const auto r = tree.range(v);
    CHECK(tztest::rel_frob(h.diag[v], Matrix::identity(r.size)) <= 1e-14);
  }
  const Matrix d = tz::hodlr_to_dense(h);
  CHECK(tztest::rel_frob(d, Matrix::identity(256)) <= 1e-13);
}

TEST_CASE("hodlr_compress: certified error and per-block ranks at n=512") {
  const std::size_t n = 512;
  const double eps = 1e-6;
  const auto cop = tz::to_cauchy_like(tztest::random_toeplitz(n, 321));
  const auto tree = tz::build_tree(n, 64);
  const auto h = tz::hodlr_compress(cop, tree, eps);
  const Matrix c = tz::dense_cauchy(cop);
  const Matrix ct = tz::hodlr_to_dense(h);
  const double cnorm = tz::spectral_norm(c);
  CHECK(tz::spectral_norm(c - ct) <= eps * cnorm);

  const double eps_v = eps / std::log2(static_cast<double>(n));
  for (std::size_t lev = 1; lev <= tree.depth(); ++lev) {
    for (std::size_t v : tree.level_vertices(lev)) {
      const std::size_t m = tree.range(tz::ClusterTree::sibling(v)).size;
      CHECK(h.rank[v] <= tz::epsilon_rank_bound(cop.rho(), m, 1, eps_v));
    }
  }

  // Per-level error budget: each level's blocks jointly stay within
  // eps ||C|| / log2(n).
  for (std::size_t lev = 1; lev <= tree.depth(); ++lev) {
    Matrix elev(n, n);
    for (std::size_t v : tree.level_vertices(lev)) {
      const auto rows = tree.range(v);
      const auto cols = tree.range(tz::ClusterTree::sibling(v));
      const Matrix exact = tz::dense_block(cop, rows, cols);
      const Matrix approx = h.Z[v] * h.W[v].adjoint();
      elev.set_block(rows.offset, cols.offset, exact - approx);
    }
    CHECK(tz::spectral_norm(elev) <= eps * cnorm / std::log2(static_cast<double>(n)));
  }
}

TEST_CASE("hodlr_compress_fast: accuracy within 10x of the plain path") {
  const std::size_t n = 512;
  const double eps = 1e-6;
  const auto cop = tz::to_cauchy_like(tztest::random_toeplitz(n, 777));
  const auto tree = tz::build_tree(n, 64);
  const Matrix c = tz::dense_cauchy(cop);
  const double plain_err =
      tz::spectral_norm(c - tz::hodlr_to_dense(tz::hodlr_compress(cop, tree, eps)));
  const double fast_err =
      tz::spectral_norm(c - tz::hodlr_to_dense(tz::hodlr_compress_fast(cop, tree, eps)));
  CHECK(fast_err <= 10.0 * std::max(plain_err, 1e-16 * tz::spectral_norm(c)));
  CHECK(fast_err <= eps * tz::spectral_norm(c) * 10.0);
}

TEST_CASE("hodlr_compress_fast: one factorization per level is faster at n=8192") {
  const std::size_t n = 8192;
  const auto cop = tz::to_cauchy_like(tztest::random_toeplitz(n, 4096));
  const auto tree = tz::build_tree(n, 64);
  const double t_plain = wall_seconds([&] { tz::hodlr_compress(cop, tree, 1e-8); });
  const double t_fast = wall_seconds([&] { tz::hodlr_compress_fast(cop, tree, 1e-8); });
  CHECK(t_fast < t_plain);
}

TEST_CASE("hodlr paths: identical rank budget for rank-one generators") {
  const std::size_t n = 256;
  auto ctx = tz::SpectralContext::make(n);
  auto rng = tztest::make_rng(11);
  Matrix g(n, 1), ht(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    g(i, 0) = tztest::random_unit_box(rng);
    ht(i, 0) = tztest::random_unit_box(rng);
  }
  const auto cop = tz::make_cauchy_like(ctx, g, ht, tztest::random_vector(n, 12));
  const auto tree = tz::build_tree(n, 32);
  const auto plain = tz::hodlr_compress(cop, tree, 1e-6);
  const auto fast = tz::hodlr_compress_fast(cop, tree, 1e-6);
  for (std::size_t v = 1; v < tree.vertex_count(); ++v) CHECK(plain.rank[v] == fast.rank[v]);
}

TEST_CASE("hodlr_matvec: identity, densified agreement, linearity") {
  std::vector<cplx> e(128, cplx(0));
  e[0] = 1;
  const auto id_cop = tz::to_cauchy_like(tz::make_toeplitz(e, e));
  const auto id_tree = tz::build_tree(128, 32);
  const auto hid = tz::hodlr_compress(id_cop, id_tree, 1e-8);
  const auto x0 = tztest::random_vector(128, 31);
  CHECK(tztest::vec_dist(tz::hodlr_matvec(hid, x0), x0) <= 1e-13 * tztest::vec_norm(x0));

  const std::size_t n = 512;
  const auto cop = tz::to_cauchy_like(tztest::random_toeplitz(n, 888));
  const auto tree = tz::build_tree(n, 64);
  const auto h = tz::hodlr_compress(cop, tree, 1e-8);
  const Matrix d = tz::hodlr_to_dense(h);
  const double hnorm = tz::spectral_norm(d);
  const auto x = tztest::random_vector(n, 32);
  CHECK(tztest::vec_dist(tz::hodlr_matvec(h, x), tz::matvec(d, x)) <=
        1e-13 * hnorm * tztest::vec_norm(x));

  const auto z = tztest::random_vector(n, 33);
  const cplx a(0.3, -1.1), b(2.0, 0.4);
  std::vector<cplx> axbz(n);
  for (std::size_t i = 0; i < n; ++i) axbz[i] = a * x[i] + b * z[i];
  auto lhs = tz::hodlr_matvec(h, axbz);
  const auto hx = tz::hodlr_matvec(h, x);
  const auto hz = tz::hodlr_matvec(h, z);
  std::vector<cplx> rhs(n);
  for (std::size_t i = 0; i < n; ++i) rhs[i] = a * hx[i] + b * hz[i];
  CHECK(tztest::vec_dist(lhs, rhs) <= 1e-13 * hnorm * tztest::vec_norm(axbz));
}

TEST_CASE("hodlr fast path: implicit representation matches the evaluated one") {
  const std::size_t n = 512;
  const auto cop = tz::to_cauchy_like(tztest::random_toeplitz(n, 999));
  const auto tree = tz::build_tree(n, 64);
  const auto evaluated = tz::hodlr_compress_fast(cop, tree, 1e-8, true);
  const auto implicit = tz::hodlr_compress_fast(cop, tree, 1e-8, false);
  const auto x = tztest::random_vector(n, 34);
  const auto ye = tz::hodlr_matvec(evaluated, x);
  const auto yi = tz::hodlr_matvec(implicit, x);
  CHECK(tztest::vec_dist(ye, yi) <= 1e-12 * tztest::vec_norm(ye));
}

TEST_CASE("base kernel: Hermitian structure and diagonal-rescaling identity") {
  const std::size_t n = 256;
  const auto cop = tz::to_cauchy_like(tztest::random_toeplitz(n, 246));
  const cplx omega = cop.ctx.omega;

  // Base kernel entries 1/(2 i sin(pi (j-k)/n)); Hermitian by inspection.
  Matrix base(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      if (j != k)
        base(j, k) =
            1.0 / (cplx(0, 2) *
                   std::sin(tz::kPi * (static_cast<double>(j) - static_cast<double>(k)) /
                            static_cast<double>(n)));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      CHECK(std::abs(base(j, k) - std::conj(base(k, j))) <= 1e-15);

  // Off-diagonal entries of C factor through the base kernel with the
  // f-rescaled generators: c_{jk} = base_{jk} * (Ghat Hhat^*)_{jk} where
  // f_j = omega^j, Ghat = diag(f)^{-1} Gt, Hhat = diag(f) Ht.
  std::vector<cplx> f(n);
  for (std::size_t j = 0; j < n; ++j) f[j] = std::pow(omega, static_cast<double>(j));
  Matrix ghat = cop.Gt, hhat = cop.Ht;
  for (std::size_t c = 0; c < cop.rho(); ++c)
    for (std::size_t j = 0; j < n; ++j) {
      ghat(j, c) *= std::conj(f[j]);
      hhat(j, c) *= f[j];
    }
  const Matrix gh = ghat * hhat.adjoint();
  const Matrix c = tz::dense_cauchy(cop);
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      if (j != k) worst = std::max(worst, std::abs(c(j, k) - base(j, k) * gh(j, k)));
  CHECK(worst <= 1e-13 * c.max_abs());
}
