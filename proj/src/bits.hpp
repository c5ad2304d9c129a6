#pragma once

#include <bit>
#include <cstdint>

namespace bnl::detail {

// Gathers the bits of `value` selected by `mask` into the low bits.
inline std::uint32_t extract_bits(std::uint32_t value, std::uint32_t mask) {
  std::uint32_t out = 0;
  int k = 0;
  while (mask) {
    const int pos = std::countr_zero(mask);
    out |= ((value >> pos) & 1u) << k++;
    mask &= mask - 1;
  }
  return out;
}

// Inverse of extract_bits: spreads the low bits of `value` onto `mask`.
inline std::uint32_t deposit_bits(std::uint32_t value, std::uint32_t mask) {
  std::uint32_t out = 0;
  int k = 0;
  while (mask) {
    const int pos = std::countr_zero(mask);
    out |= ((value >> k++) & 1u) << pos;
    mask &= mask - 1;
  }
  return out;
}

}  // namespace bnl::detail
