#include "qsep/truth_table.hpp"

#include <algorithm>
#include <stdexcept>

namespace qsep {

namespace {

char hex_digit(unsigned v) { return v < 10 ? char('0' + v) : char('a' + v - 10); }

unsigned hex_value(char c) {
  if (c >= '0' && c <= '9') return unsigned(c - '0');
  if (c >= 'a' && c <= 'f') return unsigned(c - 'a' + 10);
  if (c >= 'A' && c <= 'F') return unsigned(c - 'A' + 10);
  throw std::invalid_argument(std::string("invalid hex digit '") + c + "'");
}

}  // namespace

std::string TruthTable::to_hex() const {
  std::uint32_t bits = size();
  std::uint32_t digits = bits >= 4 ? bits / 4 : 1;
  std::string out(digits, '0');
  for (std::uint32_t d = 0; d < digits; ++d) {
    unsigned v = 0;
    for (unsigned b = 0; b < 4; ++b) {
      std::uint32_t idx = d * 4 + b;
      if (idx < bits && get(idx)) v |= 1u << b;
    }
    out[digits - 1 - d] = hex_digit(v);  // most significant digit first
  }
  return out;
}

TruthTable TruthTable::from_hex(std::string_view hex, int n) {
  TruthTable tt(n);
  std::uint32_t bits = tt.size();
  std::uint32_t digits = bits >= 4 ? bits / 4 : 1;
  if (hex.size() != digits)
    throw std::invalid_argument("hex table for n=" + std::to_string(n) +
                                " needs exactly " + std::to_string(digits) +
                                " digits, got " + std::to_string(hex.size()));
  for (std::uint32_t d = 0; d < digits; ++d) {
    unsigned v = hex_value(hex[digits - 1 - d]);
    if (bits < 4 && (v >> bits)) throw std::invalid_argument("hex digit exceeds table size");
    for (unsigned b = 0; b < 4; ++b) {
      std::uint32_t idx = d * 4 + b;
      if (idx < bits) tt.set(idx, (v >> b) & 1u);
    }
  }
  return tt;
}

}  // namespace qsep
