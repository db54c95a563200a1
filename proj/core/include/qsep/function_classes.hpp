#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qsep/truth_table.hpp"

namespace qsep {

using BigInt = boost::multiprecision::cpp_int;

// Raised when a function-class descriptor violates one of its invariants;
// the message names the violated clause.
struct SpecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// f(x) = f1(hat x) * f2(tilde x) where f1 is a perfect direct sum function
// (every hat variable in exactly one monomial, each monomial of size >= q)
// and f2 is the product of the tilde variables. Variable indices 1-based.
struct PdspSpec {
  int n = 0;
  std::vector<int> hat_vars;
  std::vector<std::vector<int>> monomials;
  std::vector<int> tilde_vars;

  int l() const { return int(hat_vars.size()); }
  int q() const { return int(monomials.size()); }

  void validate() const;
  // Sorts each monomial and orders monomials by smallest contained index,
  // giving a unique normal form for equality tests.
  void normalize();
  bool operator==(const PdspSpec&) const = default;
};

TruthTable make_pdsp(const PdspSpec& spec);

// f(x) = (prod_{i<=n/2} x_i xor g(x')) * prod_{n/2 < j <= floor(3n/4)} x_j
// with g a perfect direct sum function on x' = (x_{floor(3n/4)+1}, ..., x_n)
// given by a partition into t blocks of size >= t+1.
struct MainFamilySpec {
  int n = 0;
  int t = 0;
  std::vector<std::vector<int>> g_partition;

  void validate() const;
};

std::pair<TruthTable, PdspSpec> make_main_family(const MainFamilySpec& spec);

// Number of admissible g-partitions: sum over t of
// C(ceil(n/4) - t^2 - t - 1, t - 1), with C(a, b) = 0 when a < b or a < 0.
BigInt count_main_family(int n);

// f(hat x, tilde x) = phi(hat x) . tilde x xor g(hat x) with phi a bijection
// on {0,1}^{n/2}; hat x = (x_1..x_{n/2}), tilde x = (x_{n/2+1}..x_n).
struct MmBentSpec {
  int n = 0;
  std::vector<std::uint32_t> phi;  // permutation table, length 2^{n/2}
  std::optional<TruthTable> g;     // on n/2 variables; absent means g = 0

  void validate() const;
};

TruthTable make_mm_bent(const MmBentSpec& spec);
TruthTable make_f_id(int n);  // identity permutation, g = 0

// MM bent function whose permutation splits as
// phi(hat x) . tilde x = phi1(hat y) . tilde y xor phi2(hat z) . tilde z,
// with g on a subset x' of hat x meeting the per-half intersection bounds.
struct GammaSpec {
  int n = 0;
  std::vector<int> y_hat, z_hat, y_tilde, z_tilde;  // disjoint index lists
  std::vector<std::uint32_t> phi1;                  // length 2^{floor(n/4)}
  std::vector<std::uint32_t> phi2;                  // length 2^{ceil(n/4)}
  std::vector<int> x_prime;                         // subset of y_hat u z_hat
  std::optional<TruthTable> g;                      // on |x_prime| variables

  void validate() const;  // violations reported by constraint number (1-4)
  bool canonical_split() const;
};

// Builds the table; when the partition is the canonical split, also emits
// the equivalent MmBentSpec through the optional out-parameter.
TruthTable make_gamma(const GammaSpec& spec, MmBentSpec* equivalent_mm = nullptr);

// Raw size of the class for even n (phi1 choices * phi2 choices * g choices)
// and the induced lower bound on inequivalent functions, floor(raw / (n! 2^{n+1})).
std::pair<BigInt, BigInt> count_gamma_raw(int n);

// True iff some variable permutation, input complementations and output
// complementation map f to g. Brute force, n <= 5.
bool pnp_equivalent(const TruthTable& f, const TruthTable& g);

}  // namespace qsep
