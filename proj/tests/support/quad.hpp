#ifndef TZ_TESTS_QUAD_HPP
#define TZ_TESTS_QUAD_HPP
//
// Extended-precision (__float128) oracles for the acceptance checks. The
// strongly-separated configurations drive singular values and approximation
// errors far below double round-off, so the reference quantities here are
// computed in quad precision end to end: arc geometry, shift schedules,
// dense Cauchy blocks, factored ADI, QR, Jacobi SVD, and power iteration.
//

#include <quadmath.h>

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "tz/elliptic.hpp"
#include "tz/matrix.hpp"
#include "tz/spectral.hpp"
#include "tz/types.hpp"

namespace tz::detail {

template <>
struct math<__float128> {
  static __float128 sqrt(__float128 x) { return sqrtq(x); }
  static __float128 abs(__float128 x) { return fabsq(x); }
  static __float128 sin(__float128 x) { return sinq(x); }
  static __float128 cos(__float128 x) { return cosq(x); }
  static constexpr __float128 eps() { return FLT128_EPSILON; }
  static constexpr __float128 pi() { return M_PIq; }
};

}  // namespace tz::detail

namespace tztest::quad {

using qreal = __float128;

inline constexpr qreal kQPi = M_PIq;

struct qc {
  qreal re{0}, im{0};

  qc() = default;
  qc(qreal r, qreal i = 0) : re(r), im(i) {}
  explicit qc(tz::cplx z) : re(z.real()), im(z.imag()) {}
};

inline qc operator+(qc a, qc b) { return {a.re + b.re, a.im + b.im}; }
inline qc operator-(qc a, qc b) { return {a.re - b.re, a.im - b.im}; }
inline qc operator-(qc a) { return {-a.re, -a.im}; }
inline qc operator*(qc a, qc b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
inline qc operator*(qreal s, qc a) { return {s * a.re, s * a.im}; }
inline qc conj(qc a) { return {a.re, -a.im}; }
inline qreal abs2(qc a) { return a.re * a.re + a.im * a.im; }
inline qreal qabs(qc a) { return sqrtq(abs2(a)); }
inline qc operator/(qc a, qc b) {
  const qreal d = abs2(b);
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
inline qc qpolar(qreal angle) { return {cosq(angle), sinq(angle)}; }

/// Dense column-major quad complex matrix.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  qc& operator()(std::size_t i, std::size_t j) { return a_[j * rows_ + i]; }
  const qc& operator()(std::size_t i, std::size_t j) const { return a_[j * rows_ + i]; }

 private:
  std::size_t rows_{0}, cols_{0};
  std::vector<qc> a_;
};

inline QMatrix to_quad(const tz::Matrix& a) {
  QMatrix q(a.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) q(i, j) = qc(a(i, j));
  return q;
}

/// nodes[j] = exp(2 pi i j / n), evaluated in quad from the exact angle.
inline std::vector<qc> unit_nodes(std::size_t n, const std::vector<std::size_t>& idx) {
  std::vector<qc> out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    out[i] = qpolar(qreal(2) * kQPi * qreal(idx[i]) / qreal(n));
  return out;
}

inline std::vector<std::size_t> range_indices(tz::IndexRange r) {
  std::vector<std::size_t> idx(r.size);
  for (std::size_t i = 0; i < r.size; ++i) idx[i] = r.offset + i;
  return idx;
}

/// C(J, K) in quad from the operator's (double) generators and exact quad
/// nodes; J and K must be disjoint.
inline QMatrix dense_block(const tz::CauchyLikeOperator& cop, const std::vector<std::size_t>& J,
                           const std::vector<std::size_t>& K) {
  const std::size_t rho = cop.rho();
  const auto nj = unit_nodes(cop.n(), J);
  const auto nk = unit_nodes(cop.n(), K);
  QMatrix gj(J.size(), rho), hk(K.size(), rho);
  for (std::size_t c = 0; c < rho; ++c) {
    for (std::size_t i = 0; i < J.size(); ++i) gj(i, c) = qc(cop.Gt(J[i], c));
    for (std::size_t i = 0; i < K.size(); ++i) hk(i, c) = qc(cop.Ht(K[i], c));
  }
  QMatrix x(J.size(), K.size());
  for (std::size_t l = 0; l < K.size(); ++l) {
    for (std::size_t i = 0; i < J.size(); ++i) {
      qc num{0, 0};
      for (std::size_t c = 0; c < rho; ++c) num = num + gj(i, c) * conj(hk(l, c));
      x(i, l) = num / (nj[i] - nk[l]);
    }
  }
  return x;
}

// ---------------------------------------------------------------------------
// Arc geometry, Mobius map, and shift schedule in quad precision; mirrors the
// double-precision construction used by the library.
// ---------------------------------------------------------------------------

struct QGeometry {
  std::size_t n, m, sep;
  qreal alpha, beta, kappa, gamma, delta;
};

inline QGeometry arc_geometry(std::size_t n, std::size_t m, std::size_t sep) {
  QGeometry g{n, m, sep, 0, 0, 0, 0, 0};
  g.alpha = kQPi * qreal(m - 1) / qreal(n);
  g.beta = kQPi * qreal(m - 1 + 2 * sep) / qreal(n);
  g.kappa = tanq(g.alpha / 2) / tanq(g.beta / 2);
  const qreal r = (1 + g.kappa) / (1 - g.kappa);
  g.gamma = r * r;
  g.delta = -1 + 2 * g.gamma + 2 * sqrtq(g.gamma * (g.gamma - 1));
  return g;
}

struct QMobius {
  qc a, b, c, d;
  qc operator()(qc z) const { return (a * z + b) / (c * z + d); }
};

inline QMobius three_point_to_std(qc z1, qc z2, qc z3) {
  const qc p = z2 - z3, q = z2 - z1;
  return QMobius{p, -z1 * p, q, -z3 * q};
}

inline QMobius inverse(const QMobius& f) { return QMobius{f.d, -f.b, -f.c, f.a}; }

inline QMobius compose(const QMobius& f, const QMobius& g) {
  return QMobius{f.a * g.a + f.b * g.c, f.a * g.b + f.b * g.d, f.c * g.a + f.d * g.c,
                 f.c * g.b + f.d * g.d};
}

inline QMobius build_T1(const QGeometry& g) {
  const qc eia = qpolar(g.alpha);
  const qc eib = qpolar(g.beta);
  const QMobius src = three_point_to_std(qc(1), qc(g.delta), qc(-1));
  const QMobius dst = three_point_to_std(eia, conj(eia), eib);
  return compose(inverse(dst), src);
}

struct QShifts {
  std::vector<qc> taus, nus;
};

inline QShifts zolotarev_shifts(std::size_t n, tz::IndexRange rows, tz::IndexRange cols,
                                std::size_t sep, std::size_t k) {
  const bool row_frame = (cols.size == 0) || (rows.size != 0 && rows.size < cols.size);
  const tz::IndexRange anchor = row_frame ? rows : cols;
  const std::size_t m = anchor.size;
  const QGeometry g = arc_geometry(n, m, sep);
  const QMobius t1 = build_T1(g);
  const qreal kc = 1 / g.delta;
  const qreal bigK = tz::elliptic_K_from_complement_t<qreal>(kc);
  const qc rot = qpolar(kQPi * qreal(2 * anchor.offset + m - 1) / qreal(n));
  QShifts s;
  s.taus.resize(k);
  s.nus.resize(k);
  for (std::size_t j = 1; j <= k; ++j) {
    const qreal u = (2 * qreal(j) - 1) / (2 * qreal(k)) * bigK;
    const qreal dn = tz::jacobi_dn_t<qreal>(u, kc);
    qc tau0 = t1(qc(-g.delta * dn));
    qc nu0 = t1(qc(g.delta * dn));
    if (row_frame) std::swap(tau0, nu0);
    s.taus[j - 1] = rot * tau0;
    s.nus[j - 1] = rot * nu0;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Factored ADI in quad precision.
// ---------------------------------------------------------------------------

struct QFactors {
  QMatrix Z, W;
};

inline QFactors fadi(const std::vector<qc>& dJ, const std::vector<qc>& dK, const QMatrix& gJ,
                     const QMatrix& hK, const QShifts& s) {
  const std::size_t k = s.taus.size();
  const std::size_t rho = gJ.cols();
  QFactors f{QMatrix(dJ.size(), k * rho), QMatrix(dK.size(), k * rho)};
  for (std::size_t c = 0; c < rho; ++c) {
    for (std::size_t i = 0; i < dJ.size(); ++i)
      f.Z(i, c) = (s.nus[0] - s.taus[0]) * gJ(i, c) / (dJ[i] - s.nus[0]);
    for (std::size_t i = 0; i < dK.size(); ++i)
      f.W(i, c) = hK(i, c) / (conj(dK[i]) - conj(s.taus[0]));
  }
  for (std::size_t j = 1; j < k; ++j) {
    const qc scale = (s.nus[j] - s.taus[j]) / (s.nus[j - 1] - s.taus[j - 1]);
    for (std::size_t c = 0; c < rho; ++c) {
      for (std::size_t i = 0; i < dJ.size(); ++i)
        f.Z(i, j * rho + c) =
            scale * f.Z(i, (j - 1) * rho + c) * (dJ[i] - s.taus[j - 1]) / (dJ[i] - s.nus[j]);
      for (std::size_t i = 0; i < dK.size(); ++i)
        f.W(i, j * rho + c) = f.W(i, (j - 1) * rho + c) * (conj(dK[i]) - conj(s.nus[j - 1])) /
                              (conj(dK[i]) - conj(s.taus[j]));
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Quad dense kernels: product, power iteration, QR, one-sided Jacobi SVD.
// ---------------------------------------------------------------------------

/// a(:, 0:acols) * b(:, 0:bcols)^*; acols/bcols = 0 means all columns.
inline QMatrix mult_abstar(const QMatrix& a, const QMatrix& b, std::size_t ncols = 0) {
  const std::size_t r = ncols == 0 ? a.cols() : ncols;
  QMatrix out(a.rows(), b.rows());
  for (std::size_t j = 0; j < b.rows(); ++j)
    for (std::size_t c = 0; c < r; ++c) {
      const qc bj = conj(b(j, c));
      for (std::size_t i = 0; i < a.rows(); ++i) out(i, j) = out(i, j) + a(i, c) * bj;
    }
  return out;
}

inline QMatrix subtract(const QMatrix& a, const QMatrix& b) {
  QMatrix out(a.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) out(i, j) = a(i, j) - b(i, j);
  return out;
}

inline qreal spectral_norm(const QMatrix& a, std::size_t iters = 80) {
  const std::size_t r = a.rows(), c = a.cols();
  if (r == 0 || c == 0) return 0;
  std::vector<qc> v(c), u(r);
  for (std::size_t j = 0; j < c; ++j) v[j] = qc(1 + qreal(j % 7) / 8, qreal(j % 5) / 8);
  qreal s = 0;
  for (std::size_t it = 0; it < iters; ++it) {
    for (std::size_t i = 0; i < r; ++i) u[i] = qc(0);
    for (std::size_t j = 0; j < c; ++j)
      for (std::size_t i = 0; i < r; ++i) u[i] = u[i] + a(i, j) * v[j];
    qreal un = 0;
    for (std::size_t i = 0; i < r; ++i) un += abs2(u[i]);
    un = sqrtq(un);
    if (un == 0) return 0;
    for (std::size_t j = 0; j < c; ++j) {
      qc t{0, 0};
      for (std::size_t i = 0; i < r; ++i) t = t + conj(a(i, j)) * u[i];
      v[j] = t;
    }
    qreal vn = 0;
    for (std::size_t j = 0; j < c; ++j) vn += abs2(v[j]);
    vn = sqrtq(vn);
    s = vn / un;
    if (vn == 0) return 0;
    for (std::size_t j = 0; j < c; ++j) v[j] = (1 / vn) * v[j];
  }
  return s;
}

/// R factor of a thin QR by modified Gram-Schmidt with one reorthogonalization.
inline QMatrix qr_r(QMatrix a) {
  const std::size_t m = a.rows(), n = a.cols();
  QMatrix r(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        qc dot{0, 0};
        for (std::size_t i = 0; i < m; ++i) dot = dot + conj(a(i, k)) * a(i, j);
        r(k, j) = r(k, j) + dot;
        for (std::size_t i = 0; i < m; ++i) a(i, j) = a(i, j) - dot * a(i, k);
      }
    }
    qreal nrm = 0;
    for (std::size_t i = 0; i < m; ++i) nrm += abs2(a(i, j));
    nrm = sqrtq(nrm);
    r(j, j) = qc(nrm);
    if (nrm > 0)
      for (std::size_t i = 0; i < m; ++i) a(i, j) = (1 / nrm) * a(i, j);
  }
  return r;
}

/// Singular values (descending) by one-sided Jacobi on the columns.
inline std::vector<qreal> singular_values(QMatrix a) {
  const std::size_t m = a.rows(), n = a.cols();
  const qreal tol = FLT128_EPSILON * 16;
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        qreal app = 0, aqq = 0;
        qc apq{0, 0};
        for (std::size_t i = 0; i < m; ++i) {
          app += abs2(a(i, p));
          aqq += abs2(a(i, q));
          apq = apq + conj(a(i, p)) * a(i, q);
        }
        if (qabs(apq) <= tol * sqrtq(app * aqq) || qabs(apq) == 0) continue;
        rotated = true;
        // Unitary diagonalization of the 2x2 Gram block; the conjugate phase
        // makes the coupling real before the real rotation annihilates it.
        const qc phase = (1 / qabs(apq)) * conj(apq);
        const qreal zeta = (aqq - app) / (2 * qabs(apq));
        const qreal t = (zeta >= 0 ? 1 : qreal(-1)) / (fabsq(zeta) + sqrtq(1 + zeta * zeta));
        const qreal cth = 1 / sqrtq(1 + t * t);
        const qreal sth = t * cth;
        for (std::size_t i = 0; i < m; ++i) {
          const qc xp = a(i, p), xq = a(i, q);
          a(i, p) = cth * xp - sth * (phase * xq);
          a(i, q) = sth * (conj(phase) * xp) + cth * xq;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<qreal> sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    qreal s = 0;
    for (std::size_t i = 0; i < m; ++i) s += abs2(a(i, j));
    sigma[j] = sqrtq(s);
  }
  std::sort(sigma.begin(), sigma.end(), [](qreal x, qreal y) { return x > y; });
  return sigma;
}

/// Singular values of Z W^*, via sigma(Rz Rw^*) on the small core.
inline std::vector<qreal> low_rank_singular_values(const QMatrix& z, const QMatrix& w) {
  const QMatrix rz = qr_r(z);
  const QMatrix rw = qr_r(w);
  return singular_values(mult_abstar(rz, rw));
}

inline double to_double(qreal x) { return static_cast<double>(x); }

}  // namespace tztest::quad

#endif
