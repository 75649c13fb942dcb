#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "support/testutil.hpp"
#include "tz/error.hpp"
#include "tz/hierarchy.hpp"
#include "tz/hss.hpp"
#include "tz/oracle.hpp"
#include "tz/pipeline.hpp"
#include "tz/spectral.hpp"
#include "tz/toeplitz.hpp"
#include "tz/ulv.hpp"

using tz::cplx;
using tz::Matrix;

namespace {

tz::HSSMatrix compress_random(std::size_t n, std::uint64_t seed, double eps) {
  const auto cop = tz::to_cauchy_like(tztest::random_toeplitz(n, seed));
  return tz::hss_compress(cop, tz::build_tree(n, 64), eps);
}

tz::HSSMatrix compress_identity(std::size_t n) {
  std::vector<cplx> e(n, cplx(0));
  e[0] = 1;
  return tz::hss_compress(tz::to_cauchy_like(tz::make_toeplitz(e, e)), tz::build_tree(n, 64),
                          1e-8);
}

}  // namespace

TEST_CASE("hss_orthogonalize: preserves the represented matrix") {
  auto h = compress_random(512, 17, 1e-8);
  const Matrix before = tz::hss_to_dense(h);
  tz::hss_orthogonalize(h);
  const Matrix after = tz::hss_to_dense(h);
  CHECK(tztest::rel_frob(after, before) <= 1e-13);
  // The orthogonalized leaf bases have orthonormal columns.
  for (std::size_t v : h.tree.leaves()) {
    const Matrix& u = h.nodes[v].U;
    if (u.empty()) continue;
    CHECK(tztest::rel_frob(u.adjoint() * u, Matrix::identity(u.cols())) <= 1e-13);
  }
}

TEST_CASE("ulv_factor / ulv_solve: identity map") {
  const auto h = compress_identity(256);
  const auto f = tz::ulv_factor(h);
  const auto b = tztest::random_vector(256, 23);
  const auto x = tz::ulv_solve(f, b);
  CHECK(tztest::vec_dist(x, b) <= 1e-13 * tztest::vec_norm(b));

  const std::vector<cplx> zero(256, cplx(0));
  const auto xz = tz::ulv_solve(f, zero);
  CHECK(tztest::vec_norm(xz) == 0.0);
}

TEST_CASE("ulv_factor: zero matrix is reported singular") {
  const std::size_t n = 256;
  auto ctx = tz::SpectralContext::make(n);
  const auto cop =
      tz::make_cauchy_like(ctx, Matrix(n, 2), Matrix(n, 2), std::vector<cplx>(n, cplx(0)));
  const auto h = tz::hss_compress(cop, tz::build_tree(n, 64), 1e-8);
  try {
    tz::ulv_factor(h);
    FAIL("expected a singular block");
  } catch (const tz::Error& e) {
    CHECK(e.code() == tz::errc::singular_block);
  }
}

TEST_CASE("ulv_solve: backward residual over 20 random systems") {
  std::uint64_t seed = 9000;
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = (rep % 2 == 0) ? 256 : 512;
    auto h = compress_random(n, seed++, 1e-10);
    const Matrix ct = tz::hss_to_dense(h);
    const double cnorm = tz::spectral_norm(ct);
    const auto f = tz::ulv_factor(h);
    const auto b = tztest::random_vector(n, seed++);
    const auto x = tz::ulv_solve(f, b);
    const auto r = tz::matvec(ct, x);
    CHECK(tztest::vec_dist(r, b) <=
          1e-11 * (cnorm * tztest::vec_norm(x) + tztest::vec_norm(b)));
  }
}

TEST_CASE("ulv_solve: agreement with the dense solution at eps=1e-9") {
  const std::size_t n = 512;
  const auto cop = tz::to_cauchy_like(tztest::random_toeplitz(n, 2024));
  auto h = tz::hss_compress(cop, tz::build_tree(n, 64), 1e-9);
  const auto f = tz::ulv_factor(h);
  const auto b = tztest::random_vector(n, 2025);
  const auto x = tz::ulv_solve(f, b);
  const auto xd = tz::dense_solve(tz::dense_cauchy(cop), b);
  CHECK(tztest::vec_dist(x, xd) <= 1e2 * 1e-9 * tztest::vec_norm(xd));
}

// ---------------------------------------------------------------------------

TEST_CASE("solve_toeplitz: identity system") {
  std::vector<cplx> e(256, cplx(0));
  e[0] = 1;
  const auto t = tz::make_toeplitz(e, e);
  const auto b = tztest::random_vector(256, 5);
  const auto [x, rep] = tz::solve_toeplitz(t, b, 1e-8);
  CHECK(tztest::vec_dist(x, b) <= 1e-13 * tztest::vec_norm(b));
  CHECK(rep.n == 256);
  CHECK(rep.t_transform >= 0.0);
  CHECK(rep.t_compress >= 0.0);
  CHECK(rep.t_solve >= 0.0);
  CHECK(rep.max_rank <= rep.rank_bound);
}

TEST_CASE("solve_toeplitz: accuracy against the dense solution") {
  const std::size_t n = 512;
  const double eps = 1e-6;
  const auto t = tztest::random_toeplitz(n, 314);
  const auto b = tztest::random_vector(n, 315);
  const auto [x, rep] = tz::solve_toeplitz(t, b, eps);
  const auto xd = tz::dense_solve(tz::dense_toeplitz(t), b);
  CHECK(tztest::vec_dist(x, xd) <= 100.0 * eps * tztest::vec_norm(xd));
  CHECK(rep.format == "hss");
}

TEST_CASE("solve_toeplitz: option and input validation") {
  const auto t = tztest::random_toeplitz(128, 1);
  const auto b = tztest::random_vector(128, 2);

  tz::SolveOptions hodlr_opt;
  hodlr_opt.format = tz::Format::hodlr;
  try {
    tz::solve_toeplitz(t, b, 1e-8, hodlr_opt);
    FAIL("expected format rejection");
  } catch (const tz::Error& e) {
    CHECK(e.code() == tz::errc::format_unsupported);
  }

  CHECK_THROWS_AS(tz::solve_toeplitz(t, b, 0.0), tz::Error);
  CHECK_THROWS_AS(tz::solve_toeplitz(t, b, 1.5), tz::Error);
  CHECK_THROWS_AS(tz::solve_toeplitz(t, tztest::random_vector(64, 3), 1e-8), tz::Error);

  // An all-zero operator must surface as a numerical singularity.
  std::vector<cplx> zero(128, cplx(0));
  const auto tz0 = tz::make_toeplitz(zero, zero);
  try {
    tz::solve_toeplitz(tz0, b, 1e-8);
    FAIL("expected numerical singularity");
  } catch (const tz::Error& e) {
    CHECK(e.code() == tz::errc::numerically_singular);
  }
}

TEST_CASE("solve_toeplitz: verification residual and determinism") {
  const auto t = tztest::random_toeplitz(256, 11);
  const auto b = tztest::random_vector(256, 12);
  tz::SolveOptions opt;
  opt.verify = true;
  const auto [x1, rep1] = tz::solve_toeplitz(t, b, 1e-8, opt);
  const auto [x2, rep2] = tz::solve_toeplitz(t, b, 1e-8, opt);
  CHECK(rep1.verify_residual >= 0.0);
  CHECK(rep1.verify_residual <= 1e-5);
  for (std::size_t i = 0; i < x1.size(); ++i) CHECK(x1[i] == x2[i]);
  CHECK(rep1.max_rank == rep2.max_rank);
  CHECK(rep1.verify_residual == rep2.verify_residual);
}

TEST_CASE("unitary sandwich: compression error is format-independent of frame") {
  const std::size_t n = 256;
  const double eps = 1e-6;
  const auto t = tztest::random_toeplitz(n, 21);
  const auto cop = tz::to_cauchy_like(t);
  const auto h = tz::hss_compress(cop, tz::build_tree(n, 64), eps);
  const Matrix c = tz::dense_cauchy(cop);
  const Matrix ct = tz::hss_to_dense(h);
  const Matrix td = tz::dense_toeplitz(t);
  const Matrix tt = tztest::sandwich_F_adjoint(ct);
  const double err_c = tz::spectral_norm(c - ct, 300);
  const double err_t = tz::spectral_norm(td - tt, 300);
  CHECK(std::abs(err_c - err_t) <= 0.05 * std::max(err_c, err_t) + 1e-14);
}
