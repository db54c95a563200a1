#pragma once

#include <bit>
#include <cstdint>

namespace qsep {

// An assignment of the n input variables, bit i-1 holds x_i (x_1 is the
// least significant bit everywhere in this library).
using Input = std::uint32_t;

inline int popcount(std::uint32_t v) { return std::popcount(v); }

inline int parity(std::uint32_t v) { return std::popcount(v) & 1; }

inline int bit_of(Input x, int var) { return (x >> (var - 1)) & 1u; }

// Mask with bits var-1 set for each 1-based variable index in [first, last].
inline std::uint32_t range_mask(int first, int last) {
  if (last < first) return 0;
  std::uint32_t hi = (last >= 32) ? ~0u : ((1u << last) - 1u);
  std::uint32_t lo = (1u << (first - 1)) - 1u;
  return hi & ~lo;
}

}  // namespace qsep
