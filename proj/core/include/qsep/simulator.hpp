#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsep/bits.hpp"

namespace qsep {

using Amp = std::complex<double>;

inline constexpr double kUnitarityTol = 1e-12;
inline constexpr double kSupportTol = 1e-9;
inline constexpr std::size_t kDimCap = std::size_t(1) << 22;

// Query register of dimension n+1 tensored with w work qubits.
struct Layout {
  int n = 0;
  int w = 0;

  std::size_t dim() const { return std::size_t(n + 1) << w; }
  void check() const {
    if (n < 1 || w < 0 || dim() > kDimCap)
      throw std::invalid_argument("Layout: (n+1) * 2^w exceeds the configured cap");
  }
};

// Real unitary on the query register, stored column-sparse. All gates in
// this library have entries in {0, +-1, +-1/sqrt 2}.
class Gate {
 public:
  Gate(std::string name, int dim,
       std::vector<std::vector<std::pair<int, double>>> cols);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  const std::vector<std::pair<int, double>>& col(int c) const { return cols_[c]; }

  double unitarity_defect() const;  // max-norm of U^T U - I
  Gate adjoint(std::string name) const;

  struct Report {
    std::string name;
    int dim;
    double defect;
  };
  Report report() const { return {name_, dim_, unitarity_defect()}; }

 private:
  std::string name_;
  int dim_;
  std::vector<std::vector<std::pair<int, double>>> cols_;
};

// P^n_i: swaps query basis states |1> and |i>; P^n_1 is the identity.
Gate perm_gate(int n, int i);
// PAR^n_{i,j}, i < j: sends (|i>+|j>)/sqrt2 to |0> and (|i>-|j>)/sqrt2 to
// |1>; remaining basis states map to the remaining targets in increasing
// order (deterministic completion).
Gate par_gate(int n, int i, int j);
// S^n_{i,j} = conjugate transpose of PAR^n_{i,j}.
Gate sup_gate(int n, int i, int j);
// Unitary defined by |0> -> T00|a> + T10|b>, |1> -> T01|a> + T11|b>, with
// the same increasing-order completion on the other basis states. The
// building block for the branch-local unitaries of the algorithms.
Gate span_map_gate(std::string name, int n, int a, int b,
                   const std::array<double, 4>& t);

// Qubit-or-query control: qubit index >= 1 refers to w_i; value in {0,1}.
using Controls = std::vector<std::pair<int, int>>;

struct TraceRow {
  std::uint64_t step;
  std::string op;
  std::uint64_t queries;
};

// State vector over Layout with an oracle-call counter. Query index is the
// major axis: amplitude of |q> tensor |m> sits at q * 2^w + m.
class QState {
 public:
  explicit QState(Layout lay);

  const Layout& layout() const { return lay_; }
  std::uint64_t queries() const { return queries_; }
  Amp amp(int q, std::uint32_t m) const { return amp_[(std::size_t(q) << lay_.w) + m]; }
  std::vector<Amp>& raw() { return amp_; }
  const std::vector<Amp>& raw() const { return amp_; }

  void set_trace(std::vector<TraceRow>* sink) { trace_ = sink; }

  // O_x: multiplies every basis state with query index i in [1..n] by
  // (-1)^{x_i}; index 0 untouched; increments the query counter.
  void apply_oracle(Input x);

  void apply_query_gate(const Gate& g, const Controls& ctrls = {});
  // 2x2 real gate on work qubit `target` (1-based).
  void apply_qubit_gate(const std::array<double, 4>& m, int target,
                        const Controls& ctrls = {}, const std::string& name = "qubit_gate");
  void hadamard(int qubit);
  void pauli_x(int qubit);

  // Controlled-NOT with the query register as control: flips `target` iff
  // the query index equals 1 (identity on all other indices).
  void cnot_query_to_qubit(int target, const Controls& ctrls = {});
  // Controlled-NOT with a qubit as control: swaps query indices 0 and 1
  // iff the qubit is 1. The query register must be supported on
  // span{|0>,|1>} wherever the controls match.
  void cnot_qubit_to_query(int source, const Controls& ctrls = {});
  // swap(a,b) = CN(a,b) CN(b,a) CN(a,b) restricted to the {|0>,|1>} span.
  void swap_query_qubit(int qubit, const Controls& ctrls = {});

  // Multi-controlled NOT; target is a work qubit.
  void mcx(const Controls& controls, int target);
  // Multi-controlled NOT with the query {|0>,|1>} subspace as target.
  void mcx_query(const Controls& controls);

  // Flips the query {|0>,|1>} subspace iff the pattern held by `qubits`
  // indexes a 1 in `table` and the controls match. Classically synthesized
  // block permutation; one step regardless of the pattern count.
  void pattern_conditional_flip(const std::vector<int>& qubits,
                                const std::vector<std::uint8_t>& table,
                                const Controls& ctrls = {});

  // Deterministic measurement. Fails unless the reduced state of the qubit
  // is computational-basis pure within kSupportTol; returns the bit and the
  // purity deviation (the smaller basis-state mass).
  std::pair<int, double> measure_qubit(int qubit) const;

  double norm() const;

 private:
  void record(const std::string& op);
  bool ctrl_match(std::uint32_t m, const Controls& c) const;
  void check_span01(const Controls& ctrls, const char* what) const;

  Layout lay_;
  std::vector<Amp> amp_;
  std::vector<Amp> scratch_;
  std::uint64_t queries_ = 0;
  std::uint64_t steps_ = 0;
  std::vector<TraceRow>* trace_ = nullptr;
};

}  // namespace qsep
