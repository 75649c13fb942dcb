#ifndef TZ_ELLIPTIC_HPP
#define TZ_ELLIPTIC_HPP
//
// Project : tzsolve
// Module  : zolotarev (elliptic kernels)
// Complete elliptic integral K and Jacobi dn, parameterized throughout by the
// complementary modulus kc. Stock implementations lose accuracy when the
// modulus is extremely close to 1; passing kc directly sidesteps forming
// 1 - modulus^2 in floating point. Templated so tests can instantiate the
// same algorithms in extended precision.
//

#include <array>
#include <cmath>
#include <limits>

#include "tz/error.hpp"

namespace tz {
namespace detail {

template <class Real>
struct math;

template <>
struct math<double> {
  static double sqrt(double x) { return std::sqrt(x); }
  static double abs(double x) { return std::fabs(x); }
  static double sin(double x) { return std::sin(x); }
  static double cos(double x) { return std::cos(x); }
  static constexpr double eps() { return std::numeric_limits<double>::epsilon(); }
  static constexpr double pi() { return 3.141592653589793238462643383279502884; }
};

}  // namespace detail

/// K(Xi) with kc = sqrt(1 - Xi^2), via the arithmetic-geometric mean.
template <class Real>
Real elliptic_K_from_complement_t(Real kc) {
  require(kc > Real(0), errc::domain, "elliptic_K_from_complement: kc must be positive");
  using m = detail::math<Real>;
  Real a = Real(1), b = kc;
  for (int i = 0; i < 64; ++i) {
    const Real an = (a + b) / Real(2);
    const Real bn = m::sqrt(a * b);
    a = an;
    b = bn;
    if (m::abs(a - b) <= Real(2) * m::eps() * a) break;
  }
  return m::pi() / (Real(2) * a);
}

/// Jacobi sn, cn, dn at real u, parameterized by the complementary parameter
/// emmc = kc^2 in (0, 1]. Descending Landen transformation.
template <class Real>
void sncndn_t(Real u, Real emmc, Real& sn, Real& cn, Real& dn) {
  using m = detail::math<Real>;
  require(emmc > Real(0) && emmc <= Real(1), errc::domain, "sncndn: emmc must be in (0, 1]");
  const Real CA = m::sqrt(m::eps());
  std::array<Real, 32> em{}, en{};
  Real emc = emmc;
  Real a = Real(1);
  Real c = Real(1);
  dn = Real(1);
  int l = 0;
  for (int i = 0; i < 32; ++i) {
    l = i;
    em[i] = a;
    emc = m::sqrt(emc);
    en[i] = emc;
    c = (a + emc) / Real(2);
    if (m::abs(a - emc) <= CA * a) break;
    emc *= a;
    a = c;
  }
  u *= c;
  sn = m::sin(u);
  cn = m::cos(u);
  if (sn != Real(0)) {
    a = cn / sn;
    c *= a;
    for (int ii = l; ii >= 0; --ii) {
      const Real b = em[ii];
      a *= c;
      c *= dn;
      dn = (en[ii] + a) / (b + a);
      a = c / b;
    }
    a = Real(1) / m::sqrt(c * c + Real(1));
    sn = (sn >= Real(0)) ? a : -a;
    cn = c * sn;
  }
}

template <class Real>
Real jacobi_dn_t(Real u, Real kc) {
  require(kc > Real(0) && kc <= Real(1), errc::domain, "jacobi_dn: kc must be in (0, 1]");
  Real sn, cn, dn;
  sncndn_t<Real>(u, kc * kc, sn, cn, dn);
  return dn;
}

inline double elliptic_K_from_complement(double kc) {
  return elliptic_K_from_complement_t<double>(kc);
}

inline double jacobi_dn(double u, double kc) { return jacobi_dn_t<double>(u, kc); }

struct JacobiSnCnDn {
  double sn, cn, dn;
};

inline JacobiSnCnDn jacobi_sncndn(double u, double kc) {
  require(kc > 0.0 && kc <= 1.0, errc::domain, "jacobi_sncndn: kc must be in (0, 1]");
  JacobiSnCnDn r{};
  sncndn_t<double>(u, kc * kc, r.sn, r.cn, r.dn);
  return r;
}

}  // namespace tz

#endif
