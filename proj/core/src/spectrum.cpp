#include "qsep/spectrum.hpp"

#include <algorithm>

namespace qsep {

Dyadic walsh_coefficient(const TruthTable& tt, std::uint32_t s_mask) {
  if (s_mask >> tt.n()) throw std::invalid_argument("walsh_coefficient: S not a subset of [n]");
  std::int64_t sum = 0;
  for (Input x = 0; x < tt.size(); ++x)
    sum += ((int(tt.get(x)) ^ parity(x & s_mask)) ? -1 : 1);
  return Dyadic::make(sum, tt.n());
}

std::vector<std::int32_t> walsh_spectrum_scaled(const TruthTable& tt) {
  std::uint32_t sz = tt.size();
  std::vector<std::int32_t> a(sz);
  for (std::uint32_t x = 0; x < sz; ++x) a[x] = tt.get(x) ? -1 : 1;
  for (std::uint32_t len = 1; len < sz; len <<= 1)
    for (std::uint32_t x = 0; x < sz; x += len << 1)
      for (std::uint32_t j = x; j < x + len; ++j) {
        std::int32_t u = a[j], v = a[j + len];
        a[j] = u + v;
        a[j + len] = u - v;
      }
  return a;
}

int max_granularity(const TruthTable& tt) {
  auto spec = walsh_spectrum_scaled(tt);
  int best = 0;
  for (std::int32_t c : spec) {
    if (c == 0) continue;
    // gran of c / 2^n in lowest terms.
    int k = tt.n() - std::countr_zero(static_cast<std::uint32_t>(c < 0 ? -c : c));
    best = std::max(best, k);
  }
  return best;
}

int real_poly_degree(const TruthTable& tt) {
  std::uint32_t sz = tt.size();
  std::vector<std::int32_t> a(sz);
  for (std::uint32_t x = 0; x < sz; ++x) a[x] = tt.get(x);
  for (int b = 0; b < tt.n(); ++b) {
    std::uint32_t bit = 1u << b;
    for (std::uint32_t x = 0; x < sz; ++x)
      if (x & bit) a[x] -= a[x ^ bit];
  }
  int deg = 0;
  for (std::uint32_t s = 0; s < sz; ++s)
    if (a[s] != 0) deg = std::max(deg, popcount(s));
  return deg;
}

}  // namespace qsep
