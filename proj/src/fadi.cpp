#include "tz/fadi.hpp"

#include <cmath>
#include <string>

#include "tz/error.hpp"

namespace tz {
namespace {

constexpr double kCollisionTol = 1e-14;

void check_collisions(std::span<const cplx> diag, std::span<const cplx> shifts, const char* side) {
  for (std::size_t j = 0; j < shifts.size(); ++j) {
    for (const cplx& d : diag) {
      const double scale = std::max(std::abs(d), std::abs(shifts[j]));
      if (std::abs(d - shifts[j]) <= kCollisionTol * scale)
        fail(errc::shift_collision,
             std::string("fadi: shift ") + std::to_string(j + 1) + " collides with " + side +
                 " spectrum");
    }
  }
}

// In-place: z_col <- (dJ - prev) ./ (dJ - cur) .* z_col scaled by factor, or
// for the first step z <- factor ./ (dJ - cur) .* g.
void row_step(Matrix& z, std::span<const cplx> dJ, std::size_t col0, std::size_t rho,
              const Matrix& src, std::size_t src_col0, cplx factor, cplx cur, const cplx* prev) {
  for (std::size_t c = 0; c < rho; ++c) {
    for (std::size_t i = 0; i < dJ.size(); ++i) {
      cplx v = src(i, src_col0 + c);
      if (prev) v *= dJ[i] - *prev;
      z(i, col0 + c) = factor * v / (dJ[i] - cur);
    }
  }
}

}  // namespace

Matrix fadi_row_factor(std::span<const cplx> dJ, const Matrix& gJ, const ShiftSchedule& shifts) {
  require(gJ.rows() == dJ.size(), errc::invalid_size, "fadi: generator row count mismatch");
  const std::size_t k = shifts.nus.size();
  require(k >= 1 && shifts.taus.size() == k, errc::invalid_size, "fadi: empty shift schedule");
  check_collisions(dJ, shifts.nus, "row");
  const std::size_t rho = gJ.cols();
  Matrix z(dJ.size(), k * rho);
  row_step(z, dJ, 0, rho, gJ, 0, shifts.nus[0] - shifts.taus[0], shifts.nus[0], nullptr);
  for (std::size_t j = 1; j < k; ++j) {
    // The leading scale of Z_j is (nu_j - tau_j); each step trades the old
    // scale for the new one, hence the ratio.
    const cplx scale = (shifts.nus[j] - shifts.taus[j]) / (shifts.nus[j - 1] - shifts.taus[j - 1]);
    row_step(z, dJ, j * rho, rho, z, (j - 1) * rho, scale, shifts.nus[j], &shifts.taus[j - 1]);
  }
  return z;
}

Matrix fadi_col_factor(std::span<const cplx> dK, const Matrix& hK, const ShiftSchedule& shifts) {
  require(hK.rows() == dK.size(), errc::invalid_size, "fadi: generator row count mismatch");
  const std::size_t k = shifts.nus.size();
  require(k >= 1 && shifts.taus.size() == k, errc::invalid_size, "fadi: empty shift schedule");
  check_collisions(dK, shifts.taus, "column");
  const std::size_t rho = hK.cols();
  const std::size_t nk = dK.size();
  Matrix w(nk, k * rho);
  // W_1 = (D_K^* - conj(tau_1) I)^{-1} H_K.
  for (std::size_t c = 0; c < rho; ++c)
    for (std::size_t i = 0; i < nk; ++i)
      w(i, c) = hK(i, c) / (std::conj(dK[i]) - std::conj(shifts.taus[0]));
  // W_{j+1} = (D_K^* - conj(nu_j) I)(D_K^* - conj(tau_{j+1}) I)^{-1} W_j.
  for (std::size_t j = 1; j < k; ++j) {
    for (std::size_t c = 0; c < rho; ++c) {
      for (std::size_t i = 0; i < nk; ++i) {
        const cplx dki = std::conj(dK[i]);
        w(i, j * rho + c) = w(i, (j - 1) * rho + c) * (dki - std::conj(shifts.nus[j - 1])) /
                            (dki - std::conj(shifts.taus[j]));
      }
    }
  }
  return w;
}

LowRankFactors fadi(const DiagonalSylvester& sys, const ShiftSchedule& shifts) {
  require(sys.GJ.cols() == sys.HK.cols(), errc::invalid_size, "fadi: generator width mismatch");
  LowRankFactors out;
  out.Z = fadi_row_factor(sys.dJ, sys.GJ, shifts);
  out.W = fadi_col_factor(sys.dK, sys.HK, shifts);
  return out;
}

}  // namespace tz
