#include "qsep/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qsep {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

Gate::Gate(std::string name, int dim,
           std::vector<std::vector<std::pair<int, double>>> cols)
    : name_(std::move(name)), dim_(dim), cols_(std::move(cols)) {
  if (int(cols_.size()) != dim_) throw std::logic_error("Gate: wrong column count");
  double defect = unitarity_defect();
  if (defect > kUnitarityTol)
    throw std::logic_error("Gate '" + name_ + "': unitarity defect " +
                           std::to_string(defect));
}

double Gate::unitarity_defect() const {
  // (U^T U)_{ab} = <col_a, col_b>, computed sparsely.
  double worst = 0.0;
  std::vector<double> dense_a(dim_, 0.0);
  for (int a = 0; a < dim_; ++a) {
    for (auto& [r, v] : cols_[a]) dense_a[r] = v;
    for (int b = 0; b < dim_; ++b) {
      double dot = 0.0;
      for (auto& [r, v] : cols_[b]) dot += dense_a[r] * v;
      worst = std::max(worst, std::abs(dot - (a == b ? 1.0 : 0.0)));
    }
    for (auto& [r, v] : cols_[a]) dense_a[r] = 0.0;
  }
  return worst;
}

Gate Gate::adjoint(std::string name) const {
  std::vector<std::vector<std::pair<int, double>>> cols(dim_);
  for (int c = 0; c < dim_; ++c)
    for (auto& [r, v] : cols_[c]) cols[r].emplace_back(c, v);
  return Gate(std::move(name), dim_, std::move(cols));
}

Gate perm_gate(int n, int i) {
  if (i < 1 || i > n) throw std::invalid_argument("perm_gate: need 1 <= i <= n");
  std::vector<std::vector<std::pair<int, double>>> cols(n + 1);
  for (int c = 0; c <= n; ++c) {
    int r = c;
    if (c == 1)
      r = i;
    else if (c == i)
      r = 1;
    cols[c] = {{r, 1.0}};
  }
  return Gate("P_" + std::to_string(i), n + 1, std::move(cols));
}

Gate span_map_gate(std::string name, int n, int a, int b,
                   const std::array<double, 4>& t) {
  if (a == b || a < 0 || b < 0 || a > n || b > n)
    throw std::invalid_argument("span_map_gate: bad index pair");
  std::vector<std::vector<std::pair<int, double>>> cols(n + 1);
  cols[0] = {{a, t[0]}, {b, t[2]}};
  cols[1] = {{a, t[1]}, {b, t[3]}};
  int next = 0;
  for (int c = 2; c <= n; ++c) {
    while (next == a || next == b) ++next;
    cols[c] = {{next, 1.0}};
    ++next;
  }
  return Gate(std::move(name), n + 1, std::move(cols));
}

Gate sup_gate(int n, int i, int j) {
  if (!(0 <= i && i < j && j <= n))
    throw std::invalid_argument("sup_gate: need 0 <= i < j <= n");
  return span_map_gate("S_" + std::to_string(i) + "_" + std::to_string(j), n, i, j,
                       {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2});
}

Gate par_gate(int n, int i, int j) {
  if (i == j) throw std::invalid_argument("par_gate: need i != j");
  if (!(0 <= i && i < j && j <= n))
    throw std::invalid_argument("par_gate: need 0 <= i < j <= n");
  return sup_gate(n, i, j).adjoint("PAR_" + std::to_string(i) + "_" + std::to_string(j));
}

QState::QState(Layout lay) : lay_(lay) {
  lay_.check();
  amp_.assign(lay_.dim(), Amp(0.0, 0.0));
  scratch_.assign(lay_.n + 1, Amp(0.0, 0.0));
  amp_[0] = Amp(1.0, 0.0);
}

void QState::record(const std::string& op) {
  ++steps_;
  if (trace_) trace_->push_back({steps_, op, queries_});
}

bool QState::ctrl_match(std::uint32_t m, const Controls& c) const {
  for (auto& [qubit, value] : c)
    if (int((m >> (qubit - 1)) & 1u) != value) return false;
  return true;
}

void QState::apply_oracle(Input x) {
  std::size_t block = std::size_t(1) << lay_.w;
  for (int q = 1; q <= lay_.n; ++q)
    if (bit_of(x, q))
      for (std::size_t m = 0; m < block; ++m) amp_[(std::size_t(q) << lay_.w) + m] = -amp_[(std::size_t(q) << lay_.w) + m];
  ++queries_;
  record("oracle");
}

void QState::apply_query_gate(const Gate& g, const Controls& ctrls) {
  if (g.dim() != lay_.n + 1) throw std::invalid_argument("gate dimension mismatch");
  std::size_t block = std::size_t(1) << lay_.w;
  int d = g.dim();
  for (std::size_t m = 0; m < block; ++m) {
    if (!ctrl_match(std::uint32_t(m), ctrls)) continue;
    for (int r = 0; r < d; ++r) scratch_[r] = Amp(0.0, 0.0);
    for (int c = 0; c < d; ++c) {
      Amp a = amp_[(std::size_t(c) << lay_.w) + m];
      if (a == Amp(0.0, 0.0)) continue;
      for (auto& [r, v] : g.col(c)) scratch_[r] += v * a;
    }
    for (int r = 0; r < d; ++r) amp_[(std::size_t(r) << lay_.w) + m] = scratch_[r];
  }
  record(g.name());
}

void QState::apply_qubit_gate(const std::array<double, 4>& g, int target,
                              const Controls& ctrls, const std::string& name) {
  if (target < 1 || target > lay_.w) throw std::invalid_argument("qubit index out of range");
  for (auto& [q, v] : ctrls)
    if (q == target) throw std::invalid_argument("control overlaps target");
  std::size_t block = std::size_t(1) << lay_.w;
  std::uint32_t bit = 1u << (target - 1);
  for (int q = 0; q <= lay_.n; ++q) {
    std::size_t base = std::size_t(q) << lay_.w;
    for (std::size_t m = 0; m < block; ++m) {
      if (m & bit) continue;
      if (!ctrl_match(std::uint32_t(m), ctrls)) continue;
      Amp a0 = amp_[base + m], a1 = amp_[base + (m | bit)];
      amp_[base + m] = g[0] * a0 + g[1] * a1;
      amp_[base + (m | bit)] = g[2] * a0 + g[3] * a1;
    }
  }
  record(name);
}

void QState::hadamard(int qubit) {
  apply_qubit_gate({kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2}, qubit, {},
                   "H_w" + std::to_string(qubit));
}

void QState::pauli_x(int qubit) {
  apply_qubit_gate({0, 1, 1, 0}, qubit, {}, "X_w" + std::to_string(qubit));
}

void QState::cnot_query_to_qubit(int target, const Controls& ctrls) {
  if (target < 1 || target > lay_.w) throw std::invalid_argument("qubit index out of range");
  std::size_t block = std::size_t(1) << lay_.w;
  std::uint32_t bit = 1u << (target - 1);
  std::size_t base = std::size_t(1) << lay_.w;  // query index 1 slice
  for (std::size_t m = 0; m < block; ++m) {
    if (m & bit) continue;
    if (!ctrl_match(std::uint32_t(m), ctrls)) continue;
    std::swap(amp_[base + m], amp_[base + (m | bit)]);
  }
  record("CN_Q_w" + std::to_string(target));
}

void QState::check_span01(const Controls& ctrls, const char* what) const {
  std::size_t block = std::size_t(1) << lay_.w;
  double outside = 0.0;
  for (int q = 2; q <= lay_.n; ++q) {
    std::size_t base = std::size_t(q) << lay_.w;
    for (std::size_t m = 0; m < block; ++m)
      if (ctrl_match(std::uint32_t(m), ctrls)) outside += std::norm(amp_[base + m]);
  }
  if (outside > kSupportTol)
    throw std::runtime_error(std::string(what) +
                             ": amplitude mass outside span{|0>,|1>} of the query register");
}

void QState::cnot_qubit_to_query(int source, const Controls& ctrls) {
  if (source < 1 || source > lay_.w) throw std::invalid_argument("qubit index out of range");
  check_span01(ctrls, "cnot_qubit_to_query");
  std::size_t block = std::size_t(1) << lay_.w;
  std::uint32_t bit = 1u << (source - 1);
  std::size_t base1 = std::size_t(1) << lay_.w;
  for (std::size_t m = 0; m < block; ++m) {
    if (!(m & bit)) continue;
    if (!ctrl_match(std::uint32_t(m), ctrls)) continue;
    std::swap(amp_[m], amp_[base1 + m]);  // query |0> <-> |1>
  }
  record("CN_w" + std::to_string(source) + "_Q");
}

void QState::swap_query_qubit(int qubit, const Controls& ctrls) {
  cnot_query_to_qubit(qubit, ctrls);
  cnot_qubit_to_query(qubit, ctrls);
  cnot_query_to_qubit(qubit, ctrls);
}

void QState::mcx(const Controls& controls, int target) {
  apply_qubit_gate({0, 1, 1, 0}, target, controls,
                   "MCX_w" + std::to_string(target));
}

void QState::mcx_query(const Controls& controls) {
  std::size_t block = std::size_t(1) << lay_.w;
  std::size_t base1 = std::size_t(1) << lay_.w;
  for (std::size_t m = 0; m < block; ++m)
    if (ctrl_match(std::uint32_t(m), controls)) std::swap(amp_[m], amp_[base1 + m]);
  record("MCX_Q");
}

void QState::pattern_conditional_flip(const std::vector<int>& qubits,
                                      const std::vector<std::uint8_t>& table,
                                      const Controls& ctrls) {
  if (table.size() != (std::size_t(1) << qubits.size()))
    throw std::invalid_argument("pattern_conditional_flip: table size mismatch");
  std::size_t block = std::size_t(1) << lay_.w;
  std::size_t base1 = std::size_t(1) << lay_.w;
  for (std::size_t m = 0; m < block; ++m) {
    if (!ctrl_match(std::uint32_t(m), ctrls)) continue;
    std::uint32_t pattern = 0;
    for (std::size_t t = 0; t < qubits.size(); ++t)
      pattern |= std::uint32_t((m >> (qubits[t] - 1)) & 1u) << t;
    if (table[pattern]) std::swap(amp_[m], amp_[base1 + m]);
  }
  record("pattern_flip");
}

std::pair<int, double> QState::measure_qubit(int qubit) const {
  if (qubit < 1 || qubit > lay_.w) throw std::invalid_argument("qubit index out of range");
  std::uint32_t bit = 1u << (qubit - 1);
  std::size_t block = std::size_t(1) << lay_.w;
  double p[2] = {0.0, 0.0};
  for (int q = 0; q <= lay_.n; ++q) {
    std::size_t base = std::size_t(q) << lay_.w;
    for (std::size_t m = 0; m < block; ++m) p[(m & bit) ? 1 : 0] += std::norm(amp_[base + m]);
  }
  double deviation = std::min(p[0], p[1]);
  if (deviation > kSupportTol)
    throw std::runtime_error("measure_qubit: outcome not deterministic");
  return {p[1] > p[0] ? 1 : 0, deviation};
}

double QState::norm() const {
  double s = 0.0;
  for (const Amp& a : amp_) s += std::norm(a);
  return std::sqrt(s);
}

}  // namespace qsep
