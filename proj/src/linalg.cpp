#include "tz/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tz/error.hpp"

namespace tz {

// QR core. Stores reflectors in-place in work, diag betas in rdiag, taus out.
struct QRCore {
  Matrix work;
  std::vector<cplx> taus;

  void factor(const Matrix& a) {
    work = a;
    const std::size_t m = work.rows(), n = work.cols();
    const std::size_t kmax = std::min(m, n);
    taus.assign(kmax, cplx(0.0));
    std::vector<cplx> v;
    for (std::size_t k = 0; k < kmax; ++k) {
      // Build reflector for column k.
      double xnorm2 = 0.0;
      for (std::size_t i = k + 1; i < m; ++i) xnorm2 += std::norm(work(i, k));
      cplx alpha = work(k, k);
      if (xnorm2 == 0.0 && std::imag(alpha) == 0.0) {
        taus[k] = 0.0;
        continue;
      }
      const double anorm = std::sqrt(std::norm(alpha) + xnorm2);
      cplx sign = (alpha == cplx(0.0)) ? cplx(1.0) : alpha / std::abs(alpha);
      cplx beta = -sign * anorm;
      cplx tau = (beta - alpha) / beta;
      cplx denom = alpha - beta;
      v.assign(m - k, cplx(0.0));
      v[0] = 1.0;
      for (std::size_t i = k + 1; i < m; ++i) v[i - k] = work(i, k) / denom;
      // Apply (I - tau v v^*) to remaining columns.
      for (std::size_t j = k; j < n; ++j) {
        cplx* col = work.col(j);
        cplx s = 0.0;
        for (std::size_t i = k; i < m; ++i) s += std::conj(v[i - k]) * col[i];
        s *= tau;
        for (std::size_t i = k; i < m; ++i) col[i] -= s * v[i - k];
      }
      // Store v below the diagonal; R occupies the upper triangle.
      work(k, k) = beta;
      for (std::size_t i = k + 1; i < m; ++i) work(i, k) = v[i - k];
      taus[k] = tau;
    }
  }

  Matrix r(std::size_t ncols) const {
    const std::size_t kmax = taus.size();
    Matrix rm(kmax, ncols);
    if (kmax == 0) return rm;
    for (std::size_t j = 0; j < ncols; ++j)
      for (std::size_t i = 0; i <= std::min(j, kmax - 1); ++i) rm(i, j) = work(i, j);
    return rm;
  }

  // Forms Q (m x qcols) by applying reflectors to the leading identity columns.
  Matrix q(std::size_t qcols) const {
    const std::size_t m = work.rows();
    const std::size_t kmax = taus.size();
    Matrix qm(m, qcols);
    for (std::size_t j = 0; j < std::min(qcols, m); ++j) qm(j, j) = 1.0;
    for (std::size_t kk = kmax; kk-- > 0;) {
      if (taus[kk] == cplx(0.0)) continue;
      for (std::size_t j = 0; j < qcols; ++j) {
        cplx* col = qm.col(j);
        cplx s = col[kk];
        for (std::size_t i = kk + 1; i < m; ++i) s += std::conj(work(i, kk)) * col[i];
        s *= taus[kk];
        col[kk] -= s;
        for (std::size_t i = kk + 1; i < m; ++i) col[i] -= s * work(i, kk);
      }
    }
    return qm;
  }
};

ThinQR thin_qr(const Matrix& a) {
  QRCore core;
  core.factor(a);
  const std::size_t k = std::min(a.rows(), a.cols());
  return ThinQR{core.q(k), core.r(a.cols())};
}

FullQR full_qr(const Matrix& a) {
  QRCore core;
  core.factor(a);
  return FullQR{core.q(a.rows()), core.r(a.cols())};
}

CPQR cpqr(const Matrix& a, double rtol, std::size_t max_rank) {
  Matrix w = a;
  const std::size_t m = w.rows(), n = w.cols();
  std::vector<std::size_t> perm(n);
  for (std::size_t j = 0; j < n; ++j) perm[j] = j;
  const std::size_t kcap = std::min({m, n, max_rank});
  std::vector<cplx> taus;
  std::vector<cplx> v;
  double first_pivot = -1.0;
  std::size_t rank = 0;
  for (std::size_t k = 0; k < kcap; ++k) {
    // Pivot: column with the largest residual norm (recomputed; sizes are small).
    std::size_t best = k;
    double best_n2 = -1.0;
    for (std::size_t j = k; j < n; ++j) {
      double n2 = 0.0;
      for (std::size_t i = k; i < m; ++i) n2 += std::norm(w(i, j));
      if (n2 > best_n2) {
        best_n2 = n2;
        best = j;
      }
    }
    const double cn = std::sqrt(std::max(best_n2, 0.0));
    if (first_pivot < 0.0) first_pivot = cn;
    if (cn == 0.0 || (first_pivot > 0.0 && cn <= rtol * first_pivot)) break;
    if (best != k) {
      for (std::size_t i = 0; i < m; ++i) std::swap(w(i, k), w(i, best));
      std::swap(perm[k], perm[best]);
    }
    // Householder step on column k.
    double xnorm2 = 0.0;
    for (std::size_t i = k + 1; i < m; ++i) xnorm2 += std::norm(w(i, k));
    cplx alpha = w(k, k);
    cplx tau = 0.0;
    if (!(xnorm2 == 0.0 && std::imag(alpha) == 0.0)) {
      const double anorm = std::sqrt(std::norm(alpha) + xnorm2);
      cplx sign = (alpha == cplx(0.0)) ? cplx(1.0) : alpha / std::abs(alpha);
      cplx beta = -sign * anorm;
      tau = (beta - alpha) / beta;
      cplx denom = alpha - beta;
      v.assign(m - k, cplx(0.0));
      v[0] = 1.0;
      for (std::size_t i = k + 1; i < m; ++i) v[i - k] = w(i, k) / denom;
      for (std::size_t j = k; j < n; ++j) {
        cplx* col = w.col(j);
        cplx s = 0.0;
        for (std::size_t i = k; i < m; ++i) s += std::conj(v[i - k]) * col[i];
        s *= tau;
        for (std::size_t i = k; i < m; ++i) col[i] -= s * v[i - k];
      }
      w(k, k) = beta;
      for (std::size_t i = k + 1; i < m; ++i) w(i, k) = v[i - k];
    }
    taus.push_back(tau);
    ++rank;
  }
  CPQR out;
  out.perm = perm;
  out.rank = rank;
  out.R = Matrix(rank, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < std::min(rank, j + 1); ++i) out.R(i, j) = w(i, j);
  // Form thin Q from stored reflectors.
  Matrix q(m, rank);
  for (std::size_t j = 0; j < rank; ++j) q(j, j) = 1.0;
  for (std::size_t kk = rank; kk-- > 0;) {
    if (taus[kk] == cplx(0.0)) continue;
    for (std::size_t j = 0; j < rank; ++j) {
      cplx* col = q.col(j);
      cplx s = col[kk];
      for (std::size_t i = kk + 1; i < m; ++i) s += std::conj(w(i, kk)) * col[i];
      s *= taus[kk];
      col[kk] -= s;
      for (std::size_t i = kk + 1; i < m; ++i) col[i] -= s * w(i, kk);
    }
  }
  out.Q = std::move(q);
  return out;
}

LUFactor lu_factor(Matrix a) {
  require(a.rows() == a.cols(), errc::invalid_size, "lu_factor needs a square matrix");
  const std::size_t n = a.rows();
  LUFactor f;
  f.scale = a.max_abs();
  f.piv.resize(n);
  f.min_pivot = (n == 0) ? 0.0 : std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    f.piv[k] = p;
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
    const cplx piv = a(k, k);
    f.min_pivot = std::min(f.min_pivot, std::abs(piv));
    if (piv == cplx(0.0)) continue;  // caller inspects min_pivot
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx l = a(i, k) / piv;
      a(i, k) = l;
      if (l == cplx(0.0)) continue;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= l * a(k, j);
    }
  }
  f.lu = std::move(a);
  return f;
}

std::vector<cplx> lu_apply(const LUFactor& f, std::span<const cplx> b) {
  const std::size_t n = f.lu.rows();
  require(b.size() == n, errc::length_mismatch, "lu_apply length mismatch");
  require(f.min_pivot > 0.0, errc::singular, "exactly singular LU factor");
  std::vector<cplx> x(b.begin(), b.end());
  // Apply all row swaps before the column-oriented substitution; a swap after
  // a partial update would move entries that consumed the wrong multipliers.
  for (std::size_t k = 0; k < n; ++k) std::swap(x[k], x[f.piv[k]]);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = k + 1; i < n; ++i) x[i] -= f.lu(i, k) * x[k];
  for (std::size_t k = n; k-- > 0;) {
    for (std::size_t j = k + 1; j < n; ++j) x[k] -= f.lu(k, j) * x[j];
    x[k] /= f.lu(k, k);
  }
  return x;
}

Matrix lu_solve(const Matrix& a, const Matrix& b) {
  LUFactor f = lu_factor(a);
  require(f.min_pivot > 1e-300 * std::max(f.scale, 1.0), errc::singular, "singular matrix");
  Matrix x(b.rows(), b.cols());
  std::vector<cplx> col(b.rows());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t i = 0; i < b.rows(); ++i) col[i] = b(i, j);
    auto sol = lu_apply(f, col);
    for (std::size_t i = 0; i < b.rows(); ++i) x(i, j) = sol[i];
  }
  return x;
}

std::vector<cplx> lu_solve(const Matrix& a, std::span<const cplx> b) {
  LUFactor f = lu_factor(a);
  require(f.min_pivot > 1e-300 * std::max(f.scale, 1.0), errc::singular, "singular matrix");
  return lu_apply(f, b);
}

Matrix solve_upper(const Matrix& r, const Matrix& b) {
  const std::size_t n = r.rows();
  require(r.cols() >= n && b.rows() == n, errc::invalid_size, "solve_upper shape");
  Matrix x = b;
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t k = n; k-- > 0;) {
      for (std::size_t i = k + 1; i < n; ++i) x(k, j) -= r(k, i) * x(i, j);
      require(r(k, k) != cplx(0.0), errc::singular, "singular triangular factor");
      x(k, j) /= r(k, k);
    }
  }
  return x;
}

RowID row_interpolation(const Matrix& z, double rtol, std::size_t max_rank) {
  const std::size_t m = z.rows();
  RowID out;
  if (z.empty()) {
    out.coeff = Matrix(m, 0);
    return out;
  }
  CPQR f = cpqr(z.adjoint(), rtol, max_rank);
  const std::size_t r = f.rank;
  out.rows.assign(f.perm.begin(), f.perm.begin() + r);
  if (r == 0) {
    out.coeff = Matrix(m, 0);
    return out;
  }
  // z^* P = Q [R1 R2]; non-selected rows of z are (R1^{-1} R2)^* times selected.
  Matrix r1 = f.R.block(0, 0, r, r);
  Matrix r2 = f.R.block(0, r, r, z.rows() - r);
  Matrix t = r2.empty() ? Matrix(r, 0) : solve_upper(r1, r2);  // r x (m - r)
  out.coeff = Matrix(m, r);
  for (std::size_t i = 0; i < r; ++i) out.coeff(out.rows[i], i) = 1.0;
  for (std::size_t j = 0; j + r < m; ++j) {
    const std::size_t rowidx = f.perm[r + j];
    for (std::size_t i = 0; i < r; ++i) out.coeff(rowidx, i) = std::conj(t(i, j));
  }
  return out;
}

}  // namespace tz
