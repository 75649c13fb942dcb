#include "tz/pipeline.hpp"

#include <chrono>

#include "tz/error.hpp"
#include "tz/fft.hpp"
#include "tz/hodlr.hpp"
#include "tz/hss.hpp"
#include "tz/spectral.hpp"
#include "tz/ulv.hpp"
#include "tz/zolotarev.hpp"

namespace tz {
namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::string to_string(Format f) { return f == Format::hss ? "hss" : "hodlr"; }

std::pair<std::vector<cplx>, SolveReport> solve_toeplitz(const ToeplitzOperator& t,
                                                         std::span<const cplx> b, double eps,
                                                         const SolveOptions& options) {
  const std::size_t n = t.n();
  require(b.size() == n, errc::length_mismatch, "solve_toeplitz: rhs length mismatch");
  require(eps > 0.0 && eps < 1.0, errc::domain, "solve_toeplitz: eps must be in (0,1)");
  require(options.format == Format::hss, errc::format_unsupported,
          "solve_toeplitz: HODLR supports compression and matvec only; solving needs HSS");
  SolveReport rep;
  rep.n = n;
  rep.eps = eps;
  rep.format = to_string(options.format);

  auto t0 = std::chrono::steady_clock::now();
  std::vector<cplx> bt = apply_F(b);
  CauchyLikeOperator cop = to_cauchy_like(t);
  rep.rho = cop.rho();
  rep.t_transform = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  const ClusterTree tree = build_tree(n, std::min(options.n_min, n / 2));
  HSSMatrix hss = hss_compress(cop, tree, eps, options.leaf_accel);
  rep.max_rank = hss.max_rank();
  rep.rank_bound = hss_rank_bound(rep.rho, n, eps);
  rep.t_compress = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  std::vector<cplx> x;
  try {
    ULVFactorization f = ulv_factor(hss);
    std::vector<cplx> xt = ulv_solve(f, bt);
    x = apply_F_adjoint(xt);
  } catch (const Error& e) {
    if (e.code() == errc::singular_block)
      fail(errc::numerically_singular, "solve_toeplitz: compressed system is numerically singular");
    throw;
  }
  rep.t_solve = seconds_since(t0);

  if (options.verify && n <= kDenseSizeGuard / 2) {
    Matrix dense = dense_toeplitz(t);
    std::vector<cplx> r = matvec(dense, x);
    for (std::size_t i = 0; i < n; ++i) r[i] -= b[i];
    const double bn = norm2(b);
    rep.verify_residual = bn > 0.0 ? norm2(r) / bn : norm2(r);
  }
  return {std::move(x), std::move(rep)};
}

}  // namespace tz
