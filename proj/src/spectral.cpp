#include "tz/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "tz/error.hpp"
#include "tz/fft.hpp"

namespace tz {

SpectralContext SpectralContext::make(std::size_t n) {
  require(n >= 4 && is_power_of_two(n), errc::invalid_size, "n must be a power of two, n >= 4");
  SpectralContext ctx;
  ctx.n = n;
  ctx.omega = std::polar(1.0, kPi / static_cast<double>(n));
  ctx.nodes.resize(n);
  for (std::size_t j = 0; j < n; ++j)
    ctx.nodes[j] = std::polar(1.0, 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n));
  return ctx;
}

cplx CauchyLikeOperator::entry(std::size_t j, std::size_t k) const {
  if (j == k) return diagC[j];
  cplx num = 0.0;
  for (std::size_t c = 0; c < Gt.cols(); ++c) num += Gt(j, c) * std::conj(Ht(k, c));
  return num / (ctx.nodes[j] - ctx.nodes[k]);
}

std::vector<cplx> cauchy_diagonal(const ToeplitzOperator& t) {
  // diag(F Pi(T) F^*) where Pi(T) is the circulant with first column
  // c_k = ((n-k) t_k + k t_{k-n}) / n; under this F convention the diagonal
  // is sqrt(n) times apply_F of that column.
  const std::size_t n = t.n();
  std::vector<cplx> c(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double nn = static_cast<double>(n);
    c[k] = ((nn - kk) * t.diag_entry(static_cast<std::ptrdiff_t>(k)) +
            kk * t.diag_entry(static_cast<std::ptrdiff_t>(k) - static_cast<std::ptrdiff_t>(n))) /
           nn;
  }
  std::vector<cplx> d = apply_F(c);
  const double s = std::sqrt(static_cast<double>(n));
  for (cplx& v : d) v *= s;
  return d;
}

CauchyLikeOperator to_cauchy_like(const ToeplitzOperator& t) {
  const std::size_t n = t.n();
  DisplacementGenerators gen = toeplitz_generators(t);
  CauchyLikeOperator cop;
  cop.ctx = SpectralContext::make(n);
  cop.Gt = Matrix(n, gen.rho);
  cop.Ht = Matrix(n, gen.rho);
  std::vector<cplx> buf(n);
  for (std::size_t c = 0; c < gen.rho; ++c) {
    for (std::size_t i = 0; i < n; ++i) buf[i] = gen.G(i, c);
    std::vector<cplx> out = apply_F(buf);
    for (std::size_t i = 0; i < n; ++i) cop.Gt(i, c) = out[i];
    for (std::size_t i = 0; i < n; ++i) buf[i] = gen.H(i, c);
    out = apply_F(buf);
    for (std::size_t i = 0; i < n; ++i) cop.Ht(i, c) = out[i];
  }
  cop.diagC = cauchy_diagonal(t);
  return cop;
}

CauchyLikeOperator make_cauchy_like(SpectralContext ctx, Matrix gt, Matrix ht,
                                    std::vector<cplx> diag_c) {
  require(gt.rows() == ctx.n && ht.rows() == ctx.n && gt.cols() == ht.cols() &&
              diag_c.size() == ctx.n,
          errc::invalid_size, "generator shape mismatch");
  return CauchyLikeOperator{std::move(ctx), std::move(gt), std::move(ht), std::move(diag_c)};
}

CauchyLikeOperator prune_generators(const CauchyLikeOperator& cop) {
  const std::size_t n = cop.n();
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < cop.rho(); ++c) {
    double gmax = 0.0, hmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      gmax = std::max(gmax, std::abs(cop.Gt(i, c)));
      hmax = std::max(hmax, std::abs(cop.Ht(i, c)));
    }
    if (gmax > 0.0 && hmax > 0.0) keep.push_back(c);
  }
  if (keep.size() == cop.rho()) return cop;
  CauchyLikeOperator out;
  out.ctx = cop.ctx;
  out.diagC = cop.diagC;
  out.Gt = Matrix(n, keep.size());
  out.Ht = Matrix(n, keep.size());
  for (std::size_t c = 0; c < keep.size(); ++c)
    for (std::size_t i = 0; i < n; ++i) {
      out.Gt(i, c) = cop.Gt(i, keep[c]);
      out.Ht(i, c) = cop.Ht(i, keep[c]);
    }
  return out;
}

Matrix dense_cauchy(const CauchyLikeOperator& cop, std::size_t guard) {
  const std::size_t n = cop.n();
  require(n <= guard, errc::size_guard, "dense materialization above size guard");
  Matrix c(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) c(i, j) = cop.entry(i, j);
  return c;
}

}  // namespace tz
