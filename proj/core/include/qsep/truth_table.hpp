#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qsep/bits.hpp"

namespace qsep {

inline constexpr int kMaxVars = 24;

// Truth table of a Boolean function on n variables, 1 <= n <= 24.
// Entry at index a is f(a) where the binary digits of a are read as
// x_1 ... x_n with x_1 the least significant bit.
class TruthTable {
 public:
  explicit TruthTable(int n) : n_(check_n(n)), words_(word_count(n), 0) {}

  int n() const { return n_; }
  std::uint32_t size() const { return 1u << n_; }

  bool get(Input a) const {
    return (words_[a >> 6] >> (a & 63u)) & 1u;
  }
  void set(Input a, bool v) {
    std::uint64_t m = 1ull << (a & 63u);
    if (v)
      words_[a >> 6] |= m;
    else
      words_[a >> 6] &= ~m;
  }

  std::uint64_t weight() const {
    std::uint64_t w = 0;
    for (std::uint64_t word : words_) w += std::popcount(word);
    return w;
  }

  bool operator==(const TruthTable&) const = default;

  // Hex encoding: the 2^n table bits as one integer, most significant hex
  // digit first. n = 1 uses a single digit.
  std::string to_hex() const;
  static TruthTable from_hex(std::string_view hex, int n);

 private:
  static int check_n(int n) {
    if (n < 1 || n > kMaxVars)
      throw std::invalid_argument("TruthTable: n must be in [1, 24]");
    return n;
  }
  static std::size_t word_count(int n) {
    return (std::size_t(1) << n) <= 64 ? 1 : (std::size_t(1) << n) / 64;
  }

  int n_;
  std::vector<std::uint64_t> words_;
};

}  // namespace qsep
