#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "qsep/function_classes.hpp"

namespace qsep {

// splitmix64; the stated deterministic generator behind every --seed flag.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t below(std::uint64_t bound) { return bound ? next() % bound : 0; }
};

template <typename T>
void shuffle(std::vector<T>& v, SplitMix64& rng) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[rng.below(i)]);
}

inline std::vector<std::uint32_t> random_permutation(std::size_t size, SplitMix64& rng) {
  std::vector<std::uint32_t> p(size);
  std::iota(p.begin(), p.end(), 0u);
  shuffle(p, rng);
  return p;
}

// Seeded Gamma instance on the canonical split. The x' sizes stay within
// what the runner can keep in shared storage for the given residue, so
// every generated spec is runnable at the advertised budget.
GammaSpec random_gamma_spec(int n, std::uint64_t seed);

// Seeded pdsp instance: hat variables are a random size-l subset of [n],
// partitioned into q monomials of size >= q.
PdspSpec random_pdsp_spec(int n, int l, int q, std::uint64_t seed);

}  // namespace qsep
