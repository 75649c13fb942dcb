#ifndef TZ_FFT_HPP
#define TZ_FFT_HPP
//
// Project : tzsolve
// Module  : fft
// Radix-2 FFT and the scaled unitary transform used to pass between the
// Toeplitz and Cauchy-like coordinates. Sizes must be powers of two.
//

#include <span>
#include <vector>

#include "tz/types.hpp"

namespace tz {

bool is_power_of_two(std::size_t n);

/// In-place radix-2 transform with kernel exp(sign * 2*pi*i * jk / n).
void fft_radix2(std::vector<cplx>& a, int sign);

/// y = F x where F(j,k) = exp(2*pi*i*j*k/n) / sqrt(n). Unitary.
std::vector<cplx> apply_F(std::span<const cplx> x);

/// y = F^* x (inverse of apply_F).
std::vector<cplx> apply_F_adjoint(std::span<const cplx> x);

}  // namespace tz

#endif
