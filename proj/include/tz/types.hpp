#ifndef TZ_TYPES_HPP
#define TZ_TYPES_HPP

#include <complex>
#include <cstddef>
#include <numbers>

namespace tz {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi_v<double>;

/// Contiguous index range [offset, offset + size).
struct IndexRange {
  std::size_t offset{0};
  std::size_t size{0};

  std::size_t begin() const noexcept { return offset; }
  std::size_t end() const noexcept { return offset + size; }
  bool contains(std::size_t i) const noexcept { return i >= offset && i < offset + size; }
};

}  // namespace tz

#endif
