#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>

#include "qsep/truth_table.hpp"

namespace qsep {

// Algebraic normal form: the unique F_2 polynomial of a Boolean function.
// Each monomial is a bitmask of variable indices (bit i-1 for x_i); the
// empty mask is the constant term 1.
class Anf {
 public:
  explicit Anf(int n) : n_(n) {
    if (n < 1 || n > kMaxVars)
      throw std::invalid_argument("Anf: n must be in [1, 24]");
  }
  Anf(int n, std::set<std::uint32_t> monomials) : Anf(n) {
    for (std::uint32_t m : monomials)
      if (m >> n) throw std::invalid_argument("Anf: variable index out of range");
    monomials_ = std::move(monomials);
  }

  int n() const { return n_; }
  const std::set<std::uint32_t>& monomials() const { return monomials_; }
  void toggle(std::uint32_t m) {
    auto it = monomials_.find(m);
    if (it == monomials_.end())
      monomials_.insert(m);
    else
      monomials_.erase(it);
  }

  int degree() const {
    int d = 0;
    for (std::uint32_t m : monomials_) d = std::max(d, popcount(m));
    return d;
  }

  bool operator==(const Anf&) const = default;

  // Text form "x1*x2 + x3*x4"; "1" denotes the constant term and "0" the
  // empty polynomial. Parsing also accepts juxtaposed variables ("x1x2").
  std::string str() const;
  static Anf parse(std::string_view text);

 private:
  int n_;
  std::set<std::uint32_t> monomials_;
};

TruthTable anf_to_truth_table(const Anf& anf);
Anf truth_table_to_anf(const TruthTable& tt);

}  // namespace qsep
