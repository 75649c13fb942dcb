#ifndef TZ_ZOLOTAREV_HPP
#define TZ_ZOLOTAREV_HPP
//
// Project : tzsolve
// Module  : zolotarev
// Arc geometry for (m, sep) blocks of the Cauchy-like matrix, the Mobius map
// onto the canonical real intervals, optimal ADI shift schedules, and the
// a priori rank/error bounds used across the hierarchical formats.
//

#include <cstddef>
#include <vector>

#include "tz/types.hpp"

namespace tz {

/// Geometry of the two node arcs for an (m, sep) block at dimension n.
/// Column arc A_K spans m nodes centered at angle 0; row arc A_J is the rest
/// of the circle at cyclic distance >= sep.
struct ArcGeometry {
  std::size_t n{0}, m{0}, sep{0};
  double alpha{0};       // half-angle of A_K: pi (m-1) / n
  double beta{0};        // pi (m-1+2 sep) / n
  double kappa{0};       // tan(alpha/2) / tan(beta/2)
  double gamma{0};       // cross-ratio ((1+kappa)/(1-kappa))^2
  double delta{0};       // -1 + 2 gamma + 2 sqrt(gamma^2 - gamma)
  double comp_param{0};  // complementary elliptic parameter kc^2 = 1/gamma^2
  double rel_gap{0};     // (1/kappa - 1) / 2
};

ArcGeometry arc_geometry(std::size_t n, std::size_t m, std::size_t sep);

/// z -> (a z + b) / (c z + d).
struct MobiusMap {
  cplx a, b, c, d;

  cplx operator()(cplx z) const { return (a * z + b) / (c * z + d); }
  MobiusMap inverse() const { return MobiusMap{d, -b, -c, a}; }
};

/// Maps [-delta, -1] u [1, delta] onto A_J u A_K in the canonical frame;
/// pinned by 1 -> e^{i alpha}, delta -> e^{-i alpha}, -1 -> e^{i beta} and
/// validated on -delta -> e^{-i beta}.
MobiusMap build_T1(const ArcGeometry& geom);

/// Zolotarev zeros (taus) and poles (nus) for one block, already rotated from
/// the canonical frame onto the block's actual node positions.
struct ShiftSchedule {
  std::vector<cplx> taus;
  std::vector<cplx> nus;
  cplx rotation{1.0};
};

/// rows/cols: the block's index ranges. The side with the smaller contiguous
/// width is taken as the m-node arc (ties resolve to the column side); a
/// range of size 0 stands for "complement of the other side".
ShiftSchedule zolotarev_shifts(std::size_t n, IndexRange rows, IndexRange cols, std::size_t sep,
                               std::size_t k);

/// 4 xi^{-k} with xi = exp(pi^2 / (2 log(4 (m+sep-1)/sep))). The refined
/// variant replaces the fraction by (1+kappa)/(1-kappa) and needs n to fix
/// the geometry.
double zolotarev_bound(std::size_t m, std::size_t sep, std::size_t k,
                       bool use_gap_refinement = false, std::size_t n = 0);

/// rho * ceil((2/pi^2) log(4 (m+sep-1)/sep) log(4/eps)).
std::size_t epsilon_rank_bound(std::size_t rho, std::size_t m, std::size_t sep, double eps);

/// ceil(2 pi^-2 log(4 m) log(4/eps_v)), at least 1.
std::size_t fadi_iteration_count(std::size_t m, double eps_v);

/// rho * ceil(2 pi^-2 log(2 n) log(4/eps)).
std::size_t hss_rank_bound(std::size_t rho, std::size_t n, double eps);

/// Clamps eps to [1e-15, 0.5]; warns on stderr when clamping kicks in.
double clamp_eps(double eps);

}  // namespace tz

#endif
