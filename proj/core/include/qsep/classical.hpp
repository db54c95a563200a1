#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qsep/function_classes.hpp"
#include "qsep/spectrum.hpp"
#include "qsep/truth_table.hpp"

namespace qsep {

// One execution of a parity decision tree: the queried subsets (as masks)
// with the observed values, in order.
struct ParityTreeTrace {
  int output = 0;
  int queries = 0;
  std::vector<std::pair<std::uint32_t, int>> parities;
  int two_bit_cost = 0;  // induced cost in the 2-bit-parity model (mm tree)
};

// The n - q + 1 query tree for a pdsp function: all but one variable of
// each monomial singly, one adaptive linear query, then the tilde
// variables singly. The count is input-independent.
ParityTreeTrace pdsp_parity_tree(const PdspSpec& spec, Input x);

// n/2 single queries on the hat variables, then one generalized parity for
// the selected tilde variables (skipped as the constant 0 when phi maps to
// the zero vector). Also reports the ceil(3n/4) cost the same tree incurs
// when only 2-bit parities are allowed.
ParityTreeTrace mm_generalized_parity_tree(const MmBentSpec& spec, Input x);

inline int dplus_lower_bound(const TruthTable& tt) { return max_granularity(tt) + 1; }

// Exact deterministic decision-tree depth by memoized minimax over
// variable restrictions; n <= 14.
int brute_force_D(const TruthTable& tt);

// Exact generalized parity decision tree depth by branching over all
// parities and restricting to affine cosets; n <= 5.
int brute_force_Dplus(const TruthTable& tt);

}  // namespace qsep
