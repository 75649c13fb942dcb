#ifndef TZ_PIPELINE_HPP
#define TZ_PIPELINE_HPP
//
// Project : tzsolve
// Module  : pipeline
// End-to-end solver: transform to Cauchy-like coordinates, compress, solve
// through ULV, transform back.
//

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tz/toeplitz.hpp"
#include "tz/types.hpp"

namespace tz {

enum class Format { hss, hodlr };

std::string to_string(Format f);

struct SolveOptions {
  std::size_t n_min{64};
  Format format{Format::hss};
  bool fast{false};        // HODLR: base-matrix accelerated path
  bool leaf_accel{false};  // HSS: leaf-level base-matrix acceleration
  bool verify{false};      // dense residual check (size-guarded)
};

struct SolveReport {
  std::size_t n{0};
  std::size_t rho{0};
  double eps{0.0};
  std::string format;
  double t_transform{0.0};
  double t_compress{0.0};
  double t_solve{0.0};
  std::size_t max_rank{0};
  std::size_t rank_bound{0};
  double verify_residual{-1.0};  // ||Tx - b|| / ||b||, -1 when skipped
};

std::pair<std::vector<cplx>, SolveReport> solve_toeplitz(const ToeplitzOperator& t,
                                                         std::span<const cplx> b, double eps,
                                                         const SolveOptions& options = {});

}  // namespace tz

#endif
