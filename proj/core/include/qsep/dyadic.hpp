#pragma once

#include <cstdint>
#include <ostream>
#include <string>

namespace qsep {

// Rational of the form numerator / 2^exponent, kept in lowest terms:
// numerator is odd or zero, and zero is stored as (0, 0).
struct Dyadic {
  std::int64_t num = 0;
  int exp = 0;

  static Dyadic make(std::int64_t numerator, int exponent) {
    Dyadic d;
    if (numerator == 0) return d;
    while ((numerator & 1) == 0) {
      numerator >>= 1;
      --exponent;
    }
    d.num = numerator;
    d.exp = exponent;
    return d;
  }

  bool is_zero() const { return num == 0; }

  bool operator==(const Dyadic&) const = default;

  std::string str() const {
    if (exp <= 0) return std::to_string(num << -exp);
    return std::to_string(num) + "/2^" + std::to_string(exp);
  }
};

// Smallest k >= 0 such that q * 2^k is an integer. Zero is already an
// integer, so gran(0) = 0.
inline int granularity(const Dyadic& q) { return q.exp > 0 ? q.exp : 0; }

inline std::ostream& operator<<(std::ostream& os, const Dyadic& d) {
  return os << d.str();
}

}  // namespace qsep
