#include "tz/zolotarev.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <tuple>

#include "tz/elliptic.hpp"
#include "tz/error.hpp"

namespace tz {

ArcGeometry arc_geometry(std::size_t n, std::size_t m, std::size_t sep) {
  require(m >= 2, errc::geometry_violation, "arc_geometry: m must be at least 2");
  require(sep >= 1, errc::geometry_violation, "arc_geometry: sep must be at least 1");
  require(n >= 2 * (m + sep - 1), errc::geometry_violation,
          "arc_geometry: n must be at least 2 (m + sep - 1)");
  ArcGeometry g;
  g.n = n;
  g.m = m;
  g.sep = sep;
  const double nn = static_cast<double>(n);
  g.alpha = kPi * static_cast<double>(m - 1) / nn;
  g.beta = kPi * static_cast<double>(m - 1 + 2 * sep) / nn;
  g.kappa = std::tan(g.alpha / 2.0) / std::tan(g.beta / 2.0);
  g.gamma = std::pow((1.0 + g.kappa) / (1.0 - g.kappa), 2);
  g.delta = -1.0 + 2.0 * g.gamma + 2.0 * std::sqrt(g.gamma * (g.gamma - 1.0));
  // kc = 1/gamma, formed without the cancellation in 1 - kappa:
  // (1-kappa)/(1+kappa) = sin((beta-alpha)/2) / sin((beta+alpha)/2).
  const double s = std::sin((g.beta - g.alpha) / 2.0) / std::sin((g.beta + g.alpha) / 2.0);
  g.comp_param = (s * s) * (s * s);
  g.rel_gap = (1.0 / g.kappa - 1.0) / 2.0;
  return g;
}

namespace {

// Mobius map taking z1, z2, z3 to 0, 1, infinity.
MobiusMap three_point_to_std(cplx z1, cplx z2, cplx z3) {
  const cplx p = z2 - z3, q = z2 - z1;
  return MobiusMap{p, -z1 * p, q, -z3 * q};
}

MobiusMap compose(const MobiusMap& f, const MobiusMap& g) {
  return MobiusMap{f.a * g.a + f.b * g.c, f.a * g.b + f.b * g.d, f.c * g.a + f.d * g.c,
                   f.c * g.b + f.d * g.d};
}

}  // namespace

MobiusMap build_T1(const ArcGeometry& geom) {
  const cplx eia = std::polar(1.0, geom.alpha);
  const cplx eib = std::polar(1.0, geom.beta);
  const MobiusMap src = three_point_to_std(1.0, geom.delta, -1.0);
  const MobiusMap dst = three_point_to_std(eia, std::conj(eia), eib);
  const MobiusMap t1 = compose(dst.inverse(), src);
  const cplx fourth = t1(-geom.delta);
  require(std::abs(fourth - std::conj(eib)) <= 1e-10, errc::map_validation,
          "build_T1: fourth-point validation failed");
  return t1;
}

namespace {

struct CanonicalShifts {
  std::vector<cplx> taus;  // T1(-delta dn), on the A_J side
  std::vector<cplx> nus;   // T1(+delta dn), on the A_K side
};

// Lemma-style shift values in the canonical frame, memoized per geometry.
const CanonicalShifts& canonical_shifts(std::size_t n, std::size_t m, std::size_t sep,
                                        std::size_t k) {
  static std::mutex mu;
  static std::map<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>, CanonicalShifts>
      cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(n, m, sep, k);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  const ArcGeometry geom = arc_geometry(n, m, sep);
  const MobiusMap t1 = build_T1(geom);
  // Zolotarev's third problem on [-delta,-1] u [1,delta]: the elliptic
  // modulus comes from the interval endpoint ratio, kc = 1/delta.
  const double kc = 1.0 / geom.delta;
  const double bigK = elliptic_K_from_complement(kc);
  CanonicalShifts out;
  out.taus.resize(k);
  out.nus.resize(k);
  for (std::size_t j = 1; j <= k; ++j) {
    const double u =
        (2.0 * static_cast<double>(j) - 1.0) / (2.0 * static_cast<double>(k)) * bigK;
    const double dn = jacobi_dn(u, kc);
    out.taus[j - 1] = t1(-geom.delta * dn);
    out.nus[j - 1] = t1(geom.delta * dn);
  }
  return cache.emplace(key, std::move(out)).first->second;
}

}  // namespace

ShiftSchedule zolotarev_shifts(std::size_t n, IndexRange rows, IndexRange cols, std::size_t sep,
                               std::size_t k) {
  require(k >= 1, errc::geometry_violation, "zolotarev_shifts: k must be at least 1");
  require(rows.size > 0 || cols.size > 0, errc::geometry_violation,
          "zolotarev_shifts: empty block");
  // The m-node arc is the narrower contiguous side; size 0 marks "complement".
  const bool row_frame = (cols.size == 0) || (rows.size != 0 && rows.size < cols.size);
  const IndexRange anchor = row_frame ? rows : cols;
  const std::size_t m = anchor.size;
  const CanonicalShifts& cs = canonical_shifts(n, m, sep, k);
  // Rotation centering the canonical arc on the anchor's actual nodes:
  // nodes e^{2 pi i j / n}, center angle pi (2 offset + m - 1) / n.
  const cplx rot =
      std::polar(1.0, kPi * static_cast<double>(2 * anchor.offset + m - 1) / static_cast<double>(n));
  ShiftSchedule s;
  s.rotation = rot;
  s.taus.resize(k);
  s.nus.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    // In the row frame the anchored arc carries the zeros, so the canonical
    // roles of the two intervals swap.
    const cplx tau0 = row_frame ? cs.nus[j] : cs.taus[j];
    const cplx nu0 = row_frame ? cs.taus[j] : cs.nus[j];
    s.taus[j] = rot * tau0;
    s.nus[j] = rot * nu0;
  }
  return s;
}

double zolotarev_bound(std::size_t m, std::size_t sep, std::size_t k, bool use_gap_refinement,
                       std::size_t n) {
  if (k == 0) return 4.0;
  double fraction;
  if (use_gap_refinement) {
    require(n > 0, errc::domain, "zolotarev_bound: refined variant needs n");
    const ArcGeometry g = arc_geometry(n, m, sep);
    fraction = (1.0 + g.kappa) / (1.0 - g.kappa);
  } else {
    fraction =
        static_cast<double>(m + sep - 1) / static_cast<double>(sep);
  }
  const double xi = std::exp(kPi * kPi / (2.0 * std::log(4.0 * fraction)));
  return 4.0 * std::pow(xi, -static_cast<double>(k));
}

double clamp_eps(double eps) {
  if (eps < 1e-15) {
    std::fprintf(stderr, "warning: eps=%g clamped to 1e-15\n", eps);
    return 1e-15;
  }
  if (eps > 0.5) {
    std::fprintf(stderr, "warning: eps=%g clamped to 0.5\n", eps);
    return 0.5;
  }
  return eps;
}

std::size_t epsilon_rank_bound(std::size_t rho, std::size_t m, std::size_t sep, double eps) {
  require(eps > 0.0 && eps < 1.0, errc::domain, "epsilon_rank_bound: eps must be in (0,1)");
  eps = clamp_eps(eps);
  const double fraction = static_cast<double>(m + sep - 1) / static_cast<double>(sep);
  const double t = (2.0 / (kPi * kPi)) * std::log(4.0 * fraction) * std::log(4.0 / eps);
  return rho * static_cast<std::size_t>(std::ceil(t));
}

std::size_t fadi_iteration_count(std::size_t m, double eps_v) {
  require(eps_v > 0.0 && eps_v < 1.0, errc::domain, "fadi_iteration_count: eps must be in (0,1)");
  eps_v = clamp_eps(eps_v);
  const double t =
      (2.0 / (kPi * kPi)) * std::log(4.0 * static_cast<double>(m)) * std::log(4.0 / eps_v);
  const auto k = static_cast<std::size_t>(std::ceil(t));
  return k < 1 ? 1 : k;
}

std::size_t hss_rank_bound(std::size_t rho, std::size_t n, double eps) {
  require(eps > 0.0 && eps < 1.0, errc::domain, "hss_rank_bound: eps must be in (0,1)");
  eps = clamp_eps(eps);
  const double t =
      (2.0 / (kPi * kPi)) * std::log(2.0 * static_cast<double>(n)) * std::log(4.0 / eps);
  return rho * static_cast<std::size_t>(std::ceil(t));
}

}  // namespace tz
