#include "tz/fft.hpp"

#include <cmath>

#include "tz/error.hpp"

namespace tz {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft_radix2(std::vector<cplx>& a, int sign) {
  const std::size_t n = a.size();
  require(is_power_of_two(n), errc::invalid_size, "fft size must be a power of two");
  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * kPi / static_cast<double>(len);
    const cplx wlen = std::polar(1.0, ang);
    for (std::size_t i = 0; i < n; i += len) {
      cplx w = 1.0;
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cplx u = a[i + k];
        const cplx v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

std::vector<cplx> apply_F(std::span<const cplx> x) {
  std::vector<cplx> y(x.begin(), x.end());
  fft_radix2(y, +1);
  const double s = 1.0 / std::sqrt(static_cast<double>(y.size()));
  for (cplx& v : y) v *= s;
  return y;
}

std::vector<cplx> apply_F_adjoint(std::span<const cplx> x) {
  std::vector<cplx> y(x.begin(), x.end());
  fft_radix2(y, -1);
  const double s = 1.0 / std::sqrt(static_cast<double>(y.size()));
  for (cplx& v : y) v *= s;
  return y;
}

}  // namespace tz
