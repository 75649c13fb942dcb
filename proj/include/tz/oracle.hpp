#ifndef TZ_ORACLE_HPP
#define TZ_ORACLE_HPP
//
// Project : tzsolve
// Module  : oracle
// Dense reference numerics for tests and --verify. Correctness-first:
// one-sided Jacobi SVD (accurate small singular values), LU solve, and a
// deterministic power iteration for spectral norms.
//

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "tz/matrix.hpp"
#include "tz/types.hpp"

namespace tz {

struct SVD {
  Matrix U;
  std::vector<double> sigma;  // descending
  Matrix V;                   // a ~= U diag(sigma) V^*
};

inline constexpr std::size_t kSvdGuard = 2048;
inline constexpr std::size_t kSolveGuard = 4096;

SVD svd(const Matrix& a, std::size_t guard = kSvdGuard);
std::vector<double> singular_values(const Matrix& a, std::size_t guard = kSvdGuard);

/// Smallest k with sigma_{k+1} <= eps * sigma_1 (sigma beyond the end is 0).
std::size_t epsilon_rank(const Matrix& a, double eps, std::size_t guard = kSvdGuard);
std::size_t epsilon_rank(std::span<const double> sigma, double eps);

std::vector<cplx> dense_solve(const Matrix& a, std::span<const cplx> b,
                              std::size_t guard = kSolveGuard);

using MatVec = std::function<std::vector<cplx>(std::span<const cplx>)>;

/// Power iteration on A^*A with a deterministic start vector.
double spectral_norm(const Matrix& a, std::size_t iters = 100);
double spectral_norm(std::size_t rows, std::size_t cols, const MatVec& apply,
                     const MatVec& apply_adjoint, std::size_t iters = 100);

}  // namespace tz

#endif
