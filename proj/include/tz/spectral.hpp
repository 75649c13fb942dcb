#ifndef TZ_SPECTRAL_HPP
#define TZ_SPECTRAL_HPP
//
// Project : tzsolve
// Module  : spectral
// Transform a Toeplitz operator into Cauchy-like coordinates: C = F T F^*
// with F the scaled DFT that diagonalizes the circulant shift, F Z F^* = D.
//

#include <cstddef>
#include <vector>

#include "tz/matrix.hpp"
#include "tz/toeplitz.hpp"
#include "tz/types.hpp"

namespace tz {

struct SpectralContext {
  std::size_t n{0};
  cplx omega;               // e^{i pi / n}
  std::vector<cplx> nodes;  // omega^{2j}, j = 0..n-1

  static SpectralContext make(std::size_t n);
};

/// C(j,k) = (Gt Ht^*)_{jk} / (nodes[j] - nodes[k]) off-diagonal, diagC on it.
struct CauchyLikeOperator {
  SpectralContext ctx;
  Matrix Gt;  // n x rho
  Matrix Ht;  // n x rho
  std::vector<cplx> diagC;

  std::size_t n() const noexcept { return ctx.n; }
  std::size_t rho() const noexcept { return Gt.cols(); }
  cplx entry(std::size_t j, std::size_t k) const;
};

std::vector<cplx> cauchy_diagonal(const ToeplitzOperator& t);

CauchyLikeOperator to_cauchy_like(const ToeplitzOperator& t);

/// Toeplitz-like path: externally supplied generators plus diagonal data.
CauchyLikeOperator make_cauchy_like(SpectralContext ctx, Matrix gt, Matrix ht,
                                    std::vector<cplx> diag_c);

/// Copy of the operator with generator column pairs that contribute nothing
/// (either side identically zero) removed; the represented matrix is unchanged.
CauchyLikeOperator prune_generators(const CauchyLikeOperator& cop);

Matrix dense_cauchy(const CauchyLikeOperator& cop, std::size_t guard = kDenseSizeGuard);

}  // namespace tz

#endif
