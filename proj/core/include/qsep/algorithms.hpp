#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsep/function_classes.hpp"
#include "qsep/simulator.hpp"

namespace qsep {

// Result of one algorithm execution.
struct RunTrace {
  int output = 0;
  std::uint64_t queries = 0;
  double final_state_purity = 0.0;  // worst basis deviation among measured qubits
  std::uint64_t gate_count = 0;
};

// One primitive of a compiled circuit. Oracle steps consume the input x at
// execution time; everything else is fixed by the compiler.
struct Step {
  enum class Kind { Query, Oracle, Qubit, CnotQtoW, CnotWtoQ, SwapQW, McxQuery, PatternFlip };
  Kind kind;
  std::optional<Gate> gate;        // Kind::Query
  std::array<double, 4> m2{};      // Kind::Qubit
  std::string label;
  int target = 0;                  // work qubit index for qubit-addressed kinds
  Controls ctrls;
  std::vector<int> pat_qubits;     // Kind::PatternFlip
  std::vector<std::uint8_t> pat_table;
};

// Input-oblivious circuit: the step sequence, oracle count and measurement
// plan are fixed before the input is seen, so the query budget is constant.
struct Program {
  Layout lay;
  std::vector<Step> steps;
  std::uint64_t budget = 0;  // number of Oracle steps
  int out_qubit = 1;
  std::vector<int> and_qubits;  // measured and multiplied into the output
};

void apply_step(QState& st, const Step& step, Input x);
RunTrace execute(const Program& prog, Input x, std::vector<TraceRow>* trace = nullptr);

// --- subroutines operating on a live state -------------------------------

// Single-query untangling: from
//   (|x_a> |0>_1 |x_b>_mu |W1> + |x_c> |1>_1 |x_d>_mu |W2>) / sqrt2
// to (-1)^{x_b} (|x_b> |0>_1 |x_d>_mu |W1> + |x_b> |1>_1 |x_d>_mu |W2>) / sqrt2
// using one oracle call. The carried qubit mu defaults to w_2. The input
// shape is checked structurally before anything is applied.
void untangle_step(QState& st, int a, int b, int c, int d, Input x,
                   int carried_qubit = 2);

// Repeated untangling of s stored variables per branch (s even): branch 0
// holds branch0_vars in w_2..w_{s+1}, branch 1 holds branch1_vars there.
// Consumes the odd-indexed variables and carries the even-indexed ones,
// using s/2 oracle calls.
void untangle_pairs(QState& st, const std::vector<int>& branch0_vars,
                    const std::vector<int>& branch1_vars, Input x);

// One acquisition round: reads x_i into w_{i+1} in branch 0 and x_{k+i} in
// branch 1 with a single oracle call, leaving the query register at |0>.
void acq(QState& st, int i, int k, Input x);

// Two-query round for inner-product functions: reads x_{i+1} / x_{l+i+1}
// into w_{i+2} and deposits the phases (-1)^{x_{i+1} x_{k+i+1}} (branch 0)
// and (-1)^{x_{l+i+1} x_{l+k+i+1}} (branch 1).
void acq1(QState& st, int i, int l, int k, Input x);

// Last product-monomial step: with the control qubits holding all but one
// variable of each branch monomial, deposits (-1)^{monomial} per branch
// with one oracle call and returns the query register to |0>.
struct MonomialStep {
  std::vector<int> control_qubits;
  int oracle_var;
};
void final_monomial_phase(QState& st, Input x, const MonomialStep& branch0,
                          const MonomialStep& branch1);

// --- compiled runners -----------------------------------------------------

// f1 = prod_{i<=n/2} x_i xor prod_{j>n/2} x_j; requires n = 2 mod 4;
// floor(3n/4) queries. `corrupt` swaps one gate pair (test hook).
Program compile_algorithm1(int n, bool corrupt = false);
// f2 = prod_{i<=floor(3n/4)} x_i xor prod_{j>n/2} x_j; same budget; the
// carried work qubits expose x_{n/2+1..floor(3n/4)}.
Program compile_cor2(int n);
Program compile_main_family(const MainFamilySpec& spec);
// f_id on even n >= 4; ceil(5n/8) queries.
Program compile_f_id(int n);
// Gamma runner; ceil(5n/8) queries. n = 2 mod 4 uses branch-local phase
// kickback for g monomials that cannot be kept in shared storage and
// rejects the rare saturated cases that would exceed the budget.
Program compile_gamma(const GammaSpec& spec);
// f'(x_1..x_m) = f(x_1..x_{m-1}) xor x_m for odd m = spec.n + 1.
Program compile_gamma_odd(const GammaSpec& even_spec);

RunTrace run_algorithm1(int n, Input x);
RunTrace run_cor2(int n, Input x);
RunTrace run_main_family(const MainFamilySpec& spec, Input x);
RunTrace run_f_id(int n, Input x);
RunTrace run_gamma(const GammaSpec& spec, Input x);
RunTrace run_gamma_odd(const GammaSpec& even_spec, Input x);

std::uint64_t algorithm1_budget(int n);  // floor(3n/4)
std::uint64_t mm_budget(int n);          // ceil(5n/8)

}  // namespace qsep
