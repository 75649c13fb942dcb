#include "tz/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tz/error.hpp"
#include "tz/linalg.hpp"

namespace tz {
namespace {

// One-sided Jacobi on the columns of w; accumulates the rotations into v.
void jacobi_sweeps(Matrix& w, Matrix& v) {
  const std::size_t m = w.rows(), n = w.cols();
  const double tol = 1e-15;
  const int max_sweeps = 60;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        cplx* ap = w.col(p);
        cplx* aq = w.col(q);
        double app = 0.0, aqq = 0.0;
        cplx apq = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          app += std::norm(ap[i]);
          aqq += std::norm(aq[i]);
          apq += std::conj(ap[i]) * aq[i];
        }
        const double alpha = std::abs(apq);
        if (alpha <= tol * std::sqrt(app * aqq) || alpha == 0.0) continue;
        rotated = true;
        // Align the phase so the coupling becomes real, then a real Jacobi
        // rotation zeroes it.
        const cplx phase = std::conj(apq) / alpha;
        const double tau = (aqq - app) / (2.0 * alpha);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        cplx* vp = v.col(p);
        cplx* vq = v.col(q);
        for (std::size_t i = 0; i < m; ++i) {
          const cplx qi = phase * aq[i];
          const cplx pi = ap[i];
          ap[i] = c * pi - s * qi;
          aq[i] = s * pi + c * qi;
        }
        for (std::size_t i = 0; i < v.rows(); ++i) {
          const cplx qi = phase * vq[i];
          const cplx pi = vp[i];
          vp[i] = c * pi - s * qi;
          vq[i] = s * pi + c * qi;
        }
      }
    }
    if (!rotated) break;
  }
}

SVD svd_tall(const Matrix& a) {
  // QR preconditioning pays off for distinctly tall matrices.
  if (a.rows() > a.cols() + a.cols() / 8 && a.cols() > 0) {
    ThinQR qr = thin_qr(a);
    SVD inner = svd_tall(qr.R);
    return SVD{qr.Q * inner.U, std::move(inner.sigma), std::move(inner.V)};
  }
  Matrix w = a;
  Matrix v = Matrix::identity(a.cols());
  jacobi_sweeps(w, v);
  const std::size_t n = a.cols();
  std::vector<double> sig(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s2 = 0.0;
    for (std::size_t i = 0; i < w.rows(); ++i) s2 += std::norm(w(i, j));
    sig[j] = std::sqrt(s2);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sig[x] > sig[y]; });
  SVD out;
  out.sigma.resize(n);
  out.U = Matrix(w.rows(), n);
  out.V = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.sigma[j] = sig[src];
    const double inv = sig[src] > 0.0 ? 1.0 / sig[src] : 0.0;
    for (std::size_t i = 0; i < w.rows(); ++i) out.U(i, j) = w(i, src) * inv;
    for (std::size_t i = 0; i < n; ++i) out.V(i, j) = v(i, src);
  }
  return out;
}

}  // namespace

SVD svd(const Matrix& a, std::size_t guard) {
  require(std::min(a.rows(), a.cols()) <= guard, errc::size_guard, "svd above size guard");
  if (a.rows() >= a.cols()) return svd_tall(a);
  SVD t = svd_tall(a.adjoint());
  return SVD{std::move(t.V), std::move(t.sigma), std::move(t.U)};
}

std::vector<double> singular_values(const Matrix& a, std::size_t guard) {
  return svd(a, guard).sigma;
}

std::size_t epsilon_rank(std::span<const double> sigma, double eps) {
  if (sigma.empty() || sigma[0] == 0.0) return 0;
  const double cut = eps * sigma[0];
  std::size_t k = sigma.size();
  while (k > 0 && sigma[k - 1] <= cut) --k;
  return k;
}

std::size_t epsilon_rank(const Matrix& a, double eps, std::size_t guard) {
  const std::vector<double> s = singular_values(a, guard);
  return epsilon_rank(s, eps);
}

std::vector<cplx> dense_solve(const Matrix& a, std::span<const cplx> b, std::size_t guard) {
  require(a.rows() <= guard, errc::size_guard, "dense_solve above size guard");
  return lu_solve(a, b);
}

double spectral_norm(std::size_t rows, std::size_t cols, const MatVec& apply,
                     const MatVec& apply_adjoint, std::size_t iters) {
  if (rows == 0 || cols == 0) return 0.0;
  // Deterministic pseudo-random start vector.
  std::vector<cplx> x(cols);
  std::uint64_t state = 0x9e3779b97f4a7c15ull;
  auto next = [&state]() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return static_cast<double>(state >> 11) / 9007199254740992.0 - 0.5;
  };
  for (cplx& v : x) v = cplx(next(), next());
  double est = 0.0;
  for (std::size_t it = 0; it < iters; ++it) {
    const double nx = norm2(x);
    if (nx == 0.0) return 0.0;
    for (cplx& v : x) v /= nx;
    std::vector<cplx> y = apply(x);
    est = norm2(y);
    x = apply_adjoint(y);
    if (est > 0.0) {
      const double nrm = norm2(x);
      // ||A^* A x|| / ||A x|| stabilizes at sigma_1; cheap early exit.
      if (std::fabs(nrm / est - est) <= 1e-9 * est && it >= 30) return std::sqrt(nrm);
    }
  }
  const double nx = norm2(x);
  return nx > 0.0 && est > 0.0 ? std::sqrt(nx) : est;
}

double spectral_norm(const Matrix& a, std::size_t iters) {
  return spectral_norm(
      a.rows(), a.cols(), [&a](std::span<const cplx> x) { return matvec(a, x); },
      [&a](std::span<const cplx> x) { return matvec_adjoint(a, x); }, iters);
}

}  // namespace tz
