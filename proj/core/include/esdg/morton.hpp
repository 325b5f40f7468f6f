#pragma once

#include <cstdint>

namespace esdg {

namespace detail {
// Spreads the low 21 bits of x so they occupy every third bit.
constexpr std::uint64_t spread3(std::uint64_t x) {
  x &= 0x1fffff;
  x = (x | x << 32) & 0x1f00000000ffff;
  x = (x | x << 16) & 0x1f0000ff0000ff;
  x = (x | x << 8) & 0x100f00f00f00f00f;
  x = (x | x << 4) & 0x10c30c30c30c30c3;
  x = (x | x << 2) & 0x1249249249249249;
  return x;
}
} // namespace detail

/// Bit-interleaved Morton key of a lattice coordinate, x fastest (least
/// significant). Injective for coordinates below 2^21 per direction.
constexpr std::uint64_t morton_key(std::uint32_t i, std::uint32_t j,
                                   std::uint32_t k) {
  return detail::spread3(i) | (detail::spread3(j) << 1) |
         (detail::spread3(k) << 2);
}

} // namespace esdg
