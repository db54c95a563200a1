#include "qsep/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "qsep/anf.hpp"

namespace qsep {

namespace {

const double R = 1.0 / std::sqrt(2.0);

// Two-level branch unitaries, named by the sign pattern of their two
// columns over (|first>, |second>): e.g. pp_pm sends |0> to
// (+|first>+|second>)/r2 and |1> to (+|first>-|second>)/r2.
std::string pair_name(const char* tag, int first, int second) {
  return std::string(tag) + "_" + std::to_string(first) + "_" + std::to_string(second);
}
Gate g_pp_pm(int n, int first, int second) {
  return span_map_gate(pair_name("Upp.pm", first, second), n, first, second,
                       {R, R, R, -R});
}
Gate g_pp_mp(int n, int first, int second) {
  return span_map_gate(pair_name("Upp.mp", first, second), n, first, second,
                       {R, -R, R, R});
}
Gate g_mp_pp(int n, int first, int second) {
  return span_map_gate(pair_name("Ump.pp", first, second), n, first, second,
                       {-R, R, R, R});
}
Gate g_pm_pp(int n, int first, int second) {
  return span_map_gate(pair_name("Upm.pp", first, second), n, first, second,
                       {R, R, -R, R});
}
// Collapse of span{|first>, |second>} back onto {|0>, |1>} with the sign
// convention of the protocol tables: (|first>+|second>)/r2 -> |0>,
// (|first>-|second>)/r2 -> |1>.
Gate ordered_par(int n, int first, int second) {
  return g_pp_pm(n, first, second).adjoint(pair_name("PAR", first, second));
}
// Cross read: entered with |x_u>, one oracle call later leaves |x_v> with
// no residual phase (erases u, reads v).
Gate cross_pre(int n, int v, int u) { return g_pp_pm(n, v, u); }
Gate cross_post(int n, int v, int u) {
  return g_pp_mp(n, v, u).adjoint(pair_name("XPAR", v, u));
}

void emit_query(Program& pr, Gate g, Controls c = {}) {
  Step s;
  s.kind = Step::Kind::Query;
  s.gate = std::move(g);
  s.ctrls = std::move(c);
  pr.steps.push_back(std::move(s));
}
void emit_oracle(Program& pr) {
  Step s;
  s.kind = Step::Kind::Oracle;
  pr.steps.push_back(std::move(s));
  ++pr.budget;
}
void emit_qubit(Program& pr, const std::array<double, 4>& m, int target,
                Controls c, std::string label) {
  Step s;
  s.kind = Step::Kind::Qubit;
  s.m2 = m;
  s.target = target;
  s.ctrls = std::move(c);
  s.label = std::move(label);
  pr.steps.push_back(std::move(s));
}
void emit_h(Program& pr, int q) {
  emit_qubit(pr, {R, R, R, -R}, q, {}, "H_w" + std::to_string(q));
}
void emit_x(Program& pr, int q, Controls c = {}) {
  emit_qubit(pr, {0, 1, 1, 0}, q, std::move(c), "X_w" + std::to_string(q));
}
void emit_cnot_q_to_w(Program& pr, int target, Controls c = {}) {
  Step s;
  s.kind = Step::Kind::CnotQtoW;
  s.target = target;
  s.ctrls = std::move(c);
  pr.steps.push_back(std::move(s));
}
void emit_cnot_w_to_q(Program& pr, int source, Controls c = {}) {
  Step s;
  s.kind = Step::Kind::CnotWtoQ;
  s.target = source;
  s.ctrls = std::move(c);
  pr.steps.push_back(std::move(s));
}
void emit_swap_qw(Program& pr, int qubit, Controls c = {}) {
  Step s;
  s.kind = Step::Kind::SwapQW;
  s.target = qubit;
  s.ctrls = std::move(c);
  pr.steps.push_back(std::move(s));
}
void emit_mcx_query(Program& pr, Controls c) {
  Step s;
  s.kind = Step::Kind::McxQuery;
  s.ctrls = std::move(c);
  pr.steps.push_back(std::move(s));
}
void emit_pattern_flip(Program& pr, std::vector<int> qubits,
                       std::vector<std::uint8_t> table, Controls c) {
  Step s;
  s.kind = Step::Kind::PatternFlip;
  s.pat_qubits = std::move(qubits);
  s.pat_table = std::move(table);
  s.ctrls = std::move(c);
  pr.steps.push_back(std::move(s));
}

// Reads x_v into the query register of one branch (from |0>), around a
// shared oracle: caller emits pre gates of both branches, the oracle, then
// the post gates.
void emit_read_pre(Program& pr, int v, Controls c) { emit_query(pr, sup_gate(pr.lay.n, 0, v), std::move(c)); }
void emit_read_post(Program& pr, int v, Controls c) { emit_query(pr, par_gate(pr.lay.n, 0, v), std::move(c)); }
void emit_perm(Program& pr, int v, Controls c) { emit_query(pr, perm_gate(pr.lay.n, v), std::move(c)); }

// The seven-operator untangling core of the protocol. Expects the gamma
// shape: query register holds x_a / x_c, qubit mu holds x_b / x_d.
void emit_untangle_core(Program& pr, int a, int b, int c, int d, int mu) {
  int n = pr.lay.n;
  emit_query(pr, g_pp_mp(n, a, d), {{1, 0}, {mu, 0}});  // U10
  emit_query(pr, g_mp_pp(n, a, d), {{1, 0}, {mu, 1}});  // U11
  emit_query(pr, g_pp_pm(n, b, c), {{1, 1}, {mu, 0}});  // U20
  emit_query(pr, g_pm_pp(n, b, c), {{1, 1}, {mu, 1}});  // U21
  emit_oracle(pr);
  emit_query(pr, ordered_par(n, a, d), {{1, 0}});
  emit_query(pr, ordered_par(n, b, c), {{1, 1}});
  emit_cnot_q_to_w(pr, mu, {{1, 0}});
  emit_cnot_w_to_q(pr, mu);
}

// Full merge of two stored pairs: loads the consumed qubit into the query
// register, untangles against the carried qubit, and stores back. The
// consumed qubit ends at x_b (shared), the carried one at x_d (shared),
// and whatever the query register held is threaded through unchanged.
void emit_untangle_merge(Program& pr, int a, int b, int c, int d,
                         int consumed_qubit, int carried_qubit) {
  emit_swap_qw(pr, consumed_qubit);
  emit_untangle_core(pr, a, b, c, d, carried_qubit);
  emit_swap_qw(pr, consumed_qubit);
}

// Pair-preserving merge of a lone differing qubit mu holding x_iy (branch
// 0) / x_iz (branch 1), query register at |0> in both branches. One oracle
// call; afterwards mu holds x_iy and the query register holds x_iz in both
// branches, up to the global phase (-1)^{x_iy + x_iz}.
void emit_piece_c(Program& pr, int iy, int iz, int mu) {
  int n = pr.lay.n;
  emit_query(pr, g_pp_pm(n, iz, iy), {{1, 0}, {mu, 0}});
  emit_query(pr, g_mp_pp(n, iz, iy), {{1, 0}, {mu, 1}});
  emit_query(pr, g_pp_pm(n, iy, iz), {{1, 1}, {mu, 0}});
  emit_query(pr, g_mp_pp(n, iy, iz), {{1, 1}, {mu, 1}});
  emit_oracle(pr);
  emit_query(pr, ordered_par(n, iz, iy), {{1, 0}});
  emit_query(pr, ordered_par(n, iy, iz), {{1, 1}});
  emit_swap_qw(pr, mu, {{1, 1}});
}

void run_steps_on(QState& st, const Program& pr, Input x) {
  for (const Step& s : pr.steps) apply_step(st, s, x);
}

}  // namespace

void apply_step(QState& st, const Step& step, Input x) {
  switch (step.kind) {
    case Step::Kind::Query:
      st.apply_query_gate(*step.gate, step.ctrls);
      break;
    case Step::Kind::Oracle:
      st.apply_oracle(x);
      break;
    case Step::Kind::Qubit:
      st.apply_qubit_gate(step.m2, step.target, step.ctrls, step.label);
      break;
    case Step::Kind::CnotQtoW:
      st.cnot_query_to_qubit(step.target, step.ctrls);
      break;
    case Step::Kind::CnotWtoQ:
      st.cnot_qubit_to_query(step.target, step.ctrls);
      break;
    case Step::Kind::SwapQW:
      st.swap_query_qubit(step.target, step.ctrls);
      break;
    case Step::Kind::McxQuery:
      st.mcx_query(step.ctrls);
      break;
    case Step::Kind::PatternFlip:
      st.pattern_conditional_flip(step.pat_qubits, step.pat_table, step.ctrls);
      break;
  }
}

RunTrace execute(const Program& prog, Input x, std::vector<TraceRow>* trace) {
  QState st(prog.lay);
  st.set_trace(trace);
  run_steps_on(st, prog, x);
  RunTrace rt;
  auto [bit, dev] = st.measure_qubit(prog.out_qubit);
  rt.output = bit;
  rt.final_state_purity = dev;
  for (int q : prog.and_qubits) {
    auto [b, d] = st.measure_qubit(q);
    rt.output &= b;
    rt.final_state_purity = std::max(rt.final_state_purity, d);
  }
  rt.queries = st.queries();
  rt.gate_count = prog.steps.size() > prog.budget ? prog.steps.size() - prog.budget : 0;
  if (rt.queries != prog.budget)
    throw std::logic_error("execute: oracle count differs from the compiled budget");
  return rt;
}

// --- live-state subroutines ------------------------------------------------

namespace {

Program mini(const Layout& lay) {
  Program pr;
  pr.lay = lay;
  return pr;
}

void check_gamma_shape(const QState& st, int a, int b, int c, int d, Input x, int mu) {
  const Layout& lay = st.layout();
  std::uint32_t mu_bit = 1u << (mu - 1);
  int qa = bit_of(x, a), qb = bit_of(x, b), qc = bit_of(x, c), qd = bit_of(x, d);
  double good0 = 0, good1 = 0, bad = 0;
  for (int q = 0; q <= lay.n; ++q)
    for (std::uint32_t m = 0; m < (1u << lay.w); ++m) {
      double mass = std::norm(st.amp(q, m));
      if (mass == 0.0) continue;
      bool w1 = m & 1u;
      bool muv = m & mu_bit;
      if (!w1 && q == qa && int(muv) == qb)
        good0 += mass;
      else if (w1 && q == qc && int(muv) == qd)
        good1 += mass;
      else
        bad += mass;
    }
  if (bad > kSupportTol || std::abs(good0 - 0.5) > kSupportTol ||
      std::abs(good1 - 0.5) > kSupportTol)
    throw std::runtime_error("untangle_step: state does not have the expected shape");
}

}  // namespace

void untangle_step(QState& st, int a, int b, int c, int d, Input x, int carried_qubit) {
  check_gamma_shape(st, a, b, c, d, x, carried_qubit);
  Program pr = mini(st.layout());
  emit_untangle_core(pr, a, b, c, d, carried_qubit);
  run_steps_on(st, pr, x);
}

void untangle_pairs(QState& st, const std::vector<int>& branch0_vars,
                    const std::vector<int>& branch1_vars, Input x) {
  if (branch0_vars.size() != branch1_vars.size())
    throw std::invalid_argument("untangle_pairs: branches store different counts");
  int s = int(branch0_vars.size());
  if (s % 2)
    throw std::invalid_argument("untangle_pairs: s must be even; reduce odd tails first");
  Program pr = mini(st.layout());
  for (int i = 1; i <= s / 2; ++i)
    emit_untangle_merge(pr, branch0_vars[2 * i - 2], branch0_vars[2 * i - 1],
                        branch1_vars[2 * i - 2], branch1_vars[2 * i - 1],
                        2 * i, 2 * i + 1);
  run_steps_on(st, pr, x);
}

void acq(QState& st, int i, int k, Input x) {
  Program pr = mini(st.layout());
  emit_read_pre(pr, i, {{1, 0}});
  emit_read_pre(pr, k + i, {{1, 1}});
  emit_oracle(pr);
  emit_read_post(pr, i, {{1, 0}});
  emit_read_post(pr, k + i, {{1, 1}});
  emit_cnot_q_to_w(pr, i + 1);
  emit_cnot_w_to_q(pr, i + 1);
  run_steps_on(st, pr, x);
}

void acq1(QState& st, int i, int l, int k, Input x) {
  Program pr = mini(st.layout());
  emit_read_pre(pr, i + 1, {{1, 0}});
  emit_read_pre(pr, l + i + 1, {{1, 1}});
  emit_oracle(pr);
  emit_read_post(pr, i + 1, {{1, 0}});
  emit_read_post(pr, l + i + 1, {{1, 1}});
  emit_perm(pr, k + i + 1, {{1, 0}});
  emit_perm(pr, l + k + i + 1, {{1, 1}});
  emit_oracle(pr);
  emit_perm(pr, k + i + 1, {{1, 0}});
  emit_perm(pr, l + k + i + 1, {{1, 1}});
  emit_swap_qw(pr, i + 2);
  run_steps_on(st, pr, x);
}

void final_monomial_phase(QState& st, Input x, const MonomialStep& branch0,
                          const MonomialStep& branch1) {
  Program pr = mini(st.layout());
  auto ctrls = [](int w1, const std::vector<int>& qs) {
    Controls c{{1, w1}};
    for (int q : qs) c.emplace_back(q, 1);
    return c;
  };
  emit_mcx_query(pr, ctrls(0, branch0.control_qubits));
  emit_mcx_query(pr, ctrls(1, branch1.control_qubits));
  emit_perm(pr, branch0.oracle_var, {{1, 0}});
  emit_perm(pr, branch1.oracle_var, {{1, 1}});
  emit_oracle(pr);
  emit_perm(pr, branch0.oracle_var, {{1, 0}});
  emit_perm(pr, branch1.oracle_var, {{1, 1}});
  emit_mcx_query(pr, ctrls(0, branch0.control_qubits));
  emit_mcx_query(pr, ctrls(1, branch1.control_qubits));
  run_steps_on(st, pr, x);
}

// --- compiled runners -------------------------------------------------------

std::uint64_t algorithm1_budget(int n) { return std::uint64_t(3 * n / 4); }
std::uint64_t mm_budget(int n) { return std::uint64_t((5 * n + 7) / 8); }

namespace {

void emit_acq_steps(Program& pr, int i, int k, bool corrupt = false) {
  emit_read_pre(pr, i, {{1, 0}});
  emit_read_pre(pr, k + i, {{1, 1}});
  emit_oracle(pr);
  // Test hook: a wrong (still unitary) collapse pair in the first round.
  int post = corrupt && i == 1 ? std::min(2, pr.lay.n) : i;
  emit_read_post(pr, post, {{1, 0}});
  emit_read_post(pr, k + i, {{1, 1}});
  emit_cnot_q_to_w(pr, i + 1);
  emit_cnot_w_to_q(pr, i + 1);
}

void emit_product_phase_steps(Program& pr, const std::vector<int>& ctrl0, int p0,
                              const std::vector<int>& ctrl1, int p1) {
  auto ctrls = [](int w1, const std::vector<int>& qs) {
    Controls c{{1, w1}};
    for (int q : qs) c.emplace_back(q, 1);
    return c;
  };
  emit_mcx_query(pr, ctrls(0, ctrl0));
  emit_mcx_query(pr, ctrls(1, ctrl1));
  emit_perm(pr, p0, {{1, 0}});
  emit_perm(pr, p1, {{1, 1}});
  emit_oracle(pr);
  emit_perm(pr, p0, {{1, 0}});
  emit_perm(pr, p1, {{1, 1}});
  emit_mcx_query(pr, ctrls(0, ctrl0));
  emit_mcx_query(pr, ctrls(1, ctrl1));
}

Program compile_product_pair(int n, bool carry_tilde, bool corrupt,
                             const MainFamilySpec* main_spec) {
  if (n % 4 != 2) throw SpecError("runner requires n = 2 mod 4");
  if (n < 6) throw SpecError("runner requires n >= 6");
  int k = n / 2, l = n / 4, s2 = (k - 1) / 2;
  Program pr;
  pr.lay = {n, main_spec ? k + 2 : k};
  pr.lay.check();
  if (main_spec) {
    emit_x(pr, k + 2);
    emit_h(pr, k + 2);
  }
  emit_h(pr, 1);
  for (int i = 1; i <= k - 1; ++i) emit_acq_steps(pr, i, k, corrupt);

  std::vector<int> all(k - 1);
  std::iota(all.begin(), all.end(), 2);  // qubits w_2 .. w_k
  if (!main_spec) {
    emit_product_phase_steps(pr, all, k, all, n);
  } else {
    // Branch 1 evaluates the g monomial containing x_n through the oracle
    // and the remaining monomials by phase kickback on the |-> ancilla.
    int base = 3 * n / 4;
    auto qubit_of = [&](int v) { return l + (v - base) + 1; };
    std::vector<int> m1_ctrls;
    bool found = false;
    for (const auto& block : main_spec->g_partition) {
      if (std::find(block.begin(), block.end(), n) == block.end()) continue;
      found = true;
      for (int v : block)
        if (v != n) m1_ctrls.push_back(qubit_of(v));
    }
    if (!found) throw SpecError("main family: no g block contains x_n");
    emit_product_phase_steps(pr, all, k, m1_ctrls, n);
    for (const auto& block : main_spec->g_partition) {
      if (std::find(block.begin(), block.end(), n) != block.end()) continue;
      Controls c{{1, 1}};
      for (int v : block) c.emplace_back(qubit_of(v), 1);
      emit_x(pr, k + 2, c);  // phase kickback onto |->
    }
  }

  if (!carry_tilde) {
    for (int j = 1; j <= s2; ++j)
      emit_untangle_merge(pr, 2 * j - 1, 2 * j, k + 2 * j - 1, k + 2 * j,
                          2 * j, 2 * j + 1);
  } else {
    // Carry x_{k+1} .. x_{k+s2} so the tilde product can be read off.
    for (int j = 1; j <= s2; ++j) {
      emit_untangle_merge(pr, s2 + j, j, k + s2 + j, k + j, s2 + 1 + j, 1 + j);
      pr.and_qubits.push_back(1 + j);
    }
  }
  emit_h(pr, 1);
  return pr;
}

}  // namespace

Program compile_algorithm1(int n, bool corrupt) {
  return compile_product_pair(n, false, corrupt, nullptr);
}

Program compile_cor2(int n) { return compile_product_pair(n, true, false, nullptr); }

Program compile_main_family(const MainFamilySpec& spec) {
  spec.validate();
  if (spec.n % 4 != 2)
    throw SpecError("main family runner requires n = 2 mod 4");
  return compile_product_pair(spec.n, true, false, &spec);
}

Program compile_f_id(int n) {
  if (n < 4 || n % 2) throw SpecError("f_id runner requires even n >= 4");
  int k = n / 2, l = n / 4;
  Program pr;
  pr.lay = {n, l + 1};
  pr.lay.check();
  emit_h(pr, 1);
  for (int i = 0; i < l; ++i) {
    emit_read_pre(pr, i + 1, {{1, 0}});
    emit_read_pre(pr, l + i + 1, {{1, 1}});
    emit_oracle(pr);
    emit_read_post(pr, i + 1, {{1, 0}});
    emit_read_post(pr, l + i + 1, {{1, 1}});
    emit_perm(pr, k + i + 1, {{1, 0}});
    emit_perm(pr, l + k + i + 1, {{1, 1}});
    emit_oracle(pr);
    emit_perm(pr, k + i + 1, {{1, 0}});
    emit_perm(pr, l + k + i + 1, {{1, 1}});
    emit_swap_qw(pr, i + 2);
  }

  if (n % 4 == 0) {
    // Pairs (x_t, x_{l+t}) in qubits w_2 .. w_{l+1}.
    for (int j = 1; j <= l / 2; ++j)
      emit_untangle_merge(pr, 2 * j - 1, 2 * j, l + 2 * j - 1, l + 2 * j,
                          2 * j, 2 * j + 1);
    if (l % 2) emit_piece_c(pr, l, 2 * l, l + 1);
  } else {
    // Leftover monomial x_k x_n, evaluated in branch 1 while branch 0
    // lines its registers up with branch 1's.
    if (l % 2) {
      // Fold the first stored pair into the two monomial calls.
      emit_swap_qw(pr, 2, {{1, 0}});
      emit_query(pr, cross_pre(n, k, 1), {{1, 0}});
      emit_read_pre(pr, k, {{1, 1}});
      emit_oracle(pr);
      emit_query(pr, cross_post(n, k, 1), {{1, 0}});
      emit_read_post(pr, k, {{1, 1}});

      emit_swap_qw(pr, 2, {{1, 0}});
      emit_read_pre(pr, l + 1, {{1, 0}});
      emit_perm(pr, n, {{1, 1}});
      emit_oracle(pr);
      emit_read_post(pr, l + 1, {{1, 0}});
      emit_perm(pr, n, {{1, 1}});
      emit_swap_qw(pr, 2, {{1, 0}});
      for (int j = 1; j <= (l - 1) / 2; ++j)
        emit_untangle_merge(pr, 2 * j, 2 * j + 1, l + 2 * j, l + 2 * j + 1,
                            2 * j + 1, 2 * j + 2);
    } else {
      emit_read_pre(pr, k, {{1, 1}});
      emit_oracle(pr);
      emit_read_post(pr, k, {{1, 1}});

      emit_read_pre(pr, k, {{1, 0}});
      emit_perm(pr, n, {{1, 1}});
      emit_oracle(pr);
      emit_read_post(pr, k, {{1, 0}});
      emit_perm(pr, n, {{1, 1}});
      for (int j = 1; j <= l / 2; ++j)
        emit_untangle_merge(pr, 2 * j - 1, 2 * j, l + 2 * j - 1, l + 2 * j,
                            2 * j, 2 * j + 1);
    }
  }
  emit_h(pr, 1);
  if (pr.budget != mm_budget(n))
    throw std::logic_error("compile_f_id: budget mismatch");
  return pr;
}

namespace {

struct GammaPlan {
  std::vector<int> pair_y, pair_z;  // variable of each stored pair, by slot
  int solo_z = 0;                   // n = 2 mod 4 only
  int cross_pair = -1;              // index into pairs; -1 if none
  int n_standard = 0;               // untangle merges
  int n_piece_c = 0;
  int overflow_y = 0;               // variable kicked per monomial, or 0
};

// Decides storage order and merge roles so that every variable g needs is
// either kept in shared storage or kickable branch-locally within budget.
GammaPlan plan_gamma(const GammaSpec& spec, const Anf& g_anf,
                     const std::vector<int>& xp_sorted) {
  int n = spec.n;
  int l1 = n / 4, l2 = (n + 3) / 4;
  std::set<int> xp(xp_sorted.begin(), xp_sorted.end());
  auto in_xp = [&](int v) { return xp.count(v) > 0; };

  GammaPlan plan;
  std::vector<int> y_pref, y_rest, z_pref, z_rest;
  for (int v : spec.y_hat) (in_xp(v) ? y_pref : y_rest).push_back(v);
  for (int v : spec.z_hat) (in_xp(v) ? z_pref : z_rest).push_back(v);

  if (n % 4 == 0) {
    // ceil(l/2) preserved pair slots cover both halves of x'.
    plan.pair_y = y_pref;
    plan.pair_y.insert(plan.pair_y.end(), y_rest.begin(), y_rest.end());
    plan.pair_z = z_pref;
    plan.pair_z.insert(plan.pair_z.end(), z_rest.begin(), z_rest.end());
    plan.n_standard = l1 / 2;
    plan.n_piece_c = l1 % 2;
    return plan;
  }

  int extras = int(mm_budget(n)) - 2 * l2;
  int n_std = l1 - 1 - extras;       // each consumes one pair, carries one
  int n_pc = 2 * extras - l1 + 1;    // pair-preserving merges
  plan.n_standard = n_std;
  plan.n_piece_c = n_pc;
  plan.cross_pair = l1 - 1;  // 0-based: last pair merges via the cross read
  int preserved = extras;    // carried + piece-c pairs, positions 0..extras-1

  // Kick path: at most one x'-y cannot be preserved; its monomials must
  // only reach z variables through the solo read.
  int m1 = int(y_pref.size());
  if (m1 > preserved + 0) {
    if (m1 > preserved + 1)
      throw SpecError("gamma runner: x' has more y_hat variables than the "
                      "budget can keep at n = 2 mod 4");
    plan.overflow_y = y_pref.back();
    y_pref.pop_back();
    std::set<int> deps;
    for (std::uint32_t mono : g_anf.monomials()) {
      bool has = false;
      std::vector<int> zs;
      for (std::size_t b = 0; b < xp_sorted.size(); ++b)
        if ((mono >> b) & 1u) {
          int v = xp_sorted[b];
          if (v == plan.overflow_y) has = true;
          if (std::find(spec.z_hat.begin(), spec.z_hat.end(), v) != spec.z_hat.end())
            zs.push_back(v);
        }
      if (has) deps.insert(zs.begin(), zs.end());
    }
    if (deps.size() > 1)
      throw SpecError("gamma runner: kicked monomials reach more than one "
                      "z_hat variable; budget insufficient at n = 2 mod 4");
    if (!deps.empty()) {
      plan.solo_z = *deps.begin();
      z_pref.erase(std::remove(z_pref.begin(), z_pref.end(), plan.solo_z), z_pref.end());
    }
  }

  // z roles: solo, then preserved pairs, then the cross pair.
  if (plan.solo_z == 0) {
    if (int(z_pref.size()) > preserved + 1) {
      plan.solo_z = z_pref.back();
      z_pref.pop_back();
    } else if (!z_rest.empty()) {
      plan.solo_z = z_rest.back();
      z_rest.pop_back();
    } else {
      plan.solo_z = z_pref.back();
      z_pref.pop_back();
    }
  }
  if (int(z_pref.size()) > preserved + 1)
    throw SpecError("gamma runner: x' has more z_hat variables than the "
                    "budget can keep at n = 2 mod 4");

  // Pair positions: preserved first, consumed in the middle, cross last.
  auto fill = [&](std::vector<int> pref, std::vector<int> rest, int count,
                  bool pref_last_to_cross) {
    std::vector<int> out(count, 0);
    std::vector<int> pool = pref;
    pool.insert(pool.end(), rest.begin(), rest.end());
    // x'-variables occupy preserved slots from the front; the cross slot
    // takes an x'-z when one is left over, otherwise filler.
    if (pref_last_to_cross && int(pref.size()) == preserved + 1) {
      out[count - 1] = pref.back();
      pool.erase(std::find(pool.begin(), pool.end(), pref.back()));
    }
    int at = 0;
    for (int v : pool) {
      while (out[at] != 0) ++at;
      out[at] = v;
      ++at;
      if (at >= count) break;
    }
    return out;
  };
  std::vector<int> ys = y_pref;
  ys.insert(ys.end(), y_rest.begin(), y_rest.end());
  if (plan.overflow_y) ys.push_back(plan.overflow_y);
  // The overflow y sits in the cross pair (it dies there, after its
  // monomials were kicked); other x'-ys stay in preserved slots.
  plan.pair_y.assign(l1, 0);
  {
    int at = 0;
    for (int v : ys) {
      if (v == plan.overflow_y) continue;
      plan.pair_y[at++] = v;
    }
    if (plan.overflow_y)
      plan.pair_y[l1 - 1] = plan.overflow_y;
    else if (at < l1)
      throw std::logic_error("gamma plan: y assignment underflow");
  }
  // Re-check: the cross pair's y must be expendable.
  if (!plan.overflow_y && in_xp(plan.pair_y[l1 - 1])) {
    // Swap an x'-free y into the cross slot.
    for (int t = 0; t < l1 - 1; ++t)
      if (!in_xp(plan.pair_y[t])) {
        std::swap(plan.pair_y[t], plan.pair_y[l1 - 1]);
        break;
      }
    if (in_xp(plan.pair_y[l1 - 1]))
      throw SpecError("gamma runner: x' saturates y_hat beyond the budget "
                      "at n = 2 mod 4");
  }
  plan.pair_z = fill(z_pref, z_rest, l1, true);
  return plan;
}

}  // namespace

Program compile_gamma_impl(const GammaSpec& spec, int extra_vars) {
  spec.validate();
  int n = spec.n;
  int l1 = n / 4, l2 = (n + 3) / 4;
  std::vector<int> xp_sorted = spec.x_prime;
  std::sort(xp_sorted.begin(), xp_sorted.end());
  Anf g_anf(std::max(int(xp_sorted.size()), 1));
  if (spec.g) {
    // g's table is indexed in the declared x' order; rebuild over sorted order.
    TruthTable sorted_g(int(xp_sorted.size()));
    for (Input p = 0; p < sorted_g.size(); ++p) {
      std::uint32_t orig = 0;
      for (std::size_t b = 0; b < xp_sorted.size(); ++b) {
        std::size_t pos = std::find(spec.x_prime.begin(), spec.x_prime.end(),
                                    xp_sorted[b]) -
                          spec.x_prime.begin();
        orig |= std::uint32_t((p >> b) & 1u) << pos;
      }
      sorted_g.set(p, spec.g->get(orig));
    }
    g_anf = truth_table_to_anf(sorted_g);
  }

  GammaPlan plan = plan_gamma(spec, g_anf, xp_sorted);
  bool odd_residue = n % 4 != 0;
  bool kicks = plan.overflow_y != 0;

  Program pr;
  pr.lay = {n + extra_vars, n / 2 + 1 + (kicks ? 1 : 0)};
  pr.lay.check();
  int anc = n / 2 + 2;
  int solo_qubit = l2 + 1;

  // Variable -> qubit ledger for the final g evaluation.
  std::map<int, int> at;

  emit_h(pr, 1);
  if (kicks) {
    emit_x(pr, anc);
    emit_h(pr, anc);
  }

  // Read phase: pair t sits in qubit t+2 (0-based t).
  for (int t = 0; t < l1; ++t) {
    emit_read_pre(pr, plan.pair_y[t], {{1, 0}});
    emit_read_pre(pr, plan.pair_z[t], {{1, 1}});
    emit_oracle(pr);
    emit_read_post(pr, plan.pair_y[t], {{1, 0}});
    emit_read_post(pr, plan.pair_z[t], {{1, 1}});
    emit_swap_qw(pr, t + 2);
  }
  if (odd_residue) {
    // Both branches read the solo z variable; it is shared immediately.
    emit_read_pre(pr, plan.solo_z, {});
    emit_oracle(pr);
    emit_read_post(pr, plan.solo_z, {});
    emit_swap_qw(pr, solo_qubit);
    at[plan.solo_z] = solo_qubit;
  }

  // Kicks: monomials containing the overflow y, evaluated branch-locally
  // by phase kickback while every referenced variable is still in branch-0
  // reach (stored ys plus the shared solo z).
  std::set<std::uint32_t> kicked;
  if (kicks) {
    std::map<int, int> br0_at;  // branch-0 view
    for (int t = 0; t < l1; ++t) br0_at[plan.pair_y[t]] = t + 2;
    if (plan.solo_z) br0_at[plan.solo_z] = solo_qubit;
    for (std::uint32_t mono : g_anf.monomials()) {
      bool has = false;
      for (std::size_t b = 0; b < xp_sorted.size(); ++b)
        if (((mono >> b) & 1u) && xp_sorted[b] == plan.overflow_y) has = true;
      if (!has) continue;
      Controls c{{1, 0}};
      for (std::size_t b = 0; b < xp_sorted.size(); ++b)
        if ((mono >> b) & 1u) {
          auto it = br0_at.find(xp_sorted[b]);
          if (it == br0_at.end())
            throw SpecError("gamma runner: kicked monomial is out of branch-0 reach");
          c.emplace_back(it->second, 1);
        }
      emit_x(pr, anc, c);
      kicked.insert(mono);
    }
  }

  // Dot-product phase: per tilde bit, flip the query register on the
  // stored pattern, pick the phase up through the oracle, undo.
  auto emit_dot = [&](int branch, int t, const std::vector<int>& hat_order,
                      const std::vector<std::uint32_t>& phi,
                      const std::vector<int>& hat_list, int tilde_var,
                      int stored_count) {
    std::vector<int> qubits(stored_count);
    std::iota(qubits.begin(), qubits.end(), 2);
    std::vector<std::uint8_t> table(std::size_t(1) << stored_count, 0);
    for (std::uint32_t sp = 0; sp < table.size(); ++sp) {
      std::uint32_t p = 0;
      for (int j = 0; j < stored_count; ++j) {
        std::size_t pos = std::find(hat_list.begin(), hat_list.end(), hat_order[j]) -
                          hat_list.begin();
        p |= ((sp >> j) & 1u) << pos;
      }
      table[sp] = (phi[p] >> t) & 1u;
    }
    emit_pattern_flip(pr, qubits, table, {{1, branch}});
    emit_perm(pr, tilde_var, {{1, branch}});
  };
  auto undo_dot = [&](int branch, int t, const std::vector<int>& hat_order,
                      const std::vector<std::uint32_t>& phi,
                      const std::vector<int>& hat_list, int tilde_var,
                      int stored_count) {
    emit_perm(pr, tilde_var, {{1, branch}});
    // Rebuild the same flip table.
    std::vector<int> qubits(stored_count);
    std::iota(qubits.begin(), qubits.end(), 2);
    std::vector<std::uint8_t> table(std::size_t(1) << stored_count, 0);
    for (std::uint32_t sp = 0; sp < table.size(); ++sp) {
      std::uint32_t p = 0;
      for (int j = 0; j < stored_count; ++j) {
        std::size_t pos = std::find(hat_list.begin(), hat_list.end(), hat_order[j]) -
                          hat_list.begin();
        p |= ((sp >> j) & 1u) << pos;
      }
      table[sp] = (phi[p] >> t) & 1u;
    }
    emit_pattern_flip(pr, qubits, table, {{1, branch}});
  };

  // Branch 1 stores the z pattern in the same qubits plus the solo slot.
  std::vector<int> z_order = plan.pair_z;
  if (odd_residue) z_order.push_back(plan.solo_z);
  int dots = odd_residue ? l2 : l1;
  for (int t = 0; t < dots; ++t) {
    bool br0_active = t < l1;
    bool br0_cross = odd_residue && t == dots - 1;
    if (br0_active)
      emit_dot(0, t, plan.pair_y, spec.phi1, spec.y_hat, spec.y_tilde[t], l1);
    emit_dot(1, t, z_order, spec.phi2, spec.z_hat, spec.z_tilde[t],
             odd_residue ? l2 : l1);
    if (br0_cross) {
      int cp = plan.cross_pair;
      emit_swap_qw(pr, cp + 2, {{1, 0}});
      emit_query(pr, cross_pre(pr.lay.n, plan.pair_z[cp], plan.pair_y[cp]), {{1, 0}});
    }
    emit_oracle(pr);
    if (br0_cross) {
      int cp = plan.cross_pair;
      emit_query(pr, cross_post(pr.lay.n, plan.pair_z[cp], plan.pair_y[cp]), {{1, 0}});
      emit_swap_qw(pr, cp + 2, {{1, 0}});
      at[plan.pair_z[cp]] = cp + 2;
    }
    if (br0_active)
      undo_dot(0, t, plan.pair_y, spec.phi1, spec.y_hat, spec.y_tilde[t], l1);
    undo_dot(1, t, z_order, spec.phi2, spec.z_hat, spec.z_tilde[t],
             odd_residue ? l2 : l1);
  }

  // Merge phase.
  int preserved = plan.n_standard + plan.n_piece_c;
  int spare = l2 + 2;
  for (int j = 0; j < plan.n_standard; ++j) {
    int carried = j, consumed = preserved + j;
    emit_untangle_merge(pr, plan.pair_y[consumed], plan.pair_y[carried],
                        plan.pair_z[consumed], plan.pair_z[carried],
                        consumed + 2, carried + 2);
    at[plan.pair_y[carried]] = consumed + 2;
    at[plan.pair_z[carried]] = carried + 2;
  }
  for (int j = 0; j < plan.n_piece_c; ++j) {
    int t = plan.n_standard + j;
    emit_piece_c(pr, plan.pair_y[t], plan.pair_z[t], t + 2);
    emit_swap_qw(pr, spare);  // park the z value so the next merge sees |0>
    at[plan.pair_y[t]] = t + 2;
    at[plan.pair_z[t]] = spare;
    ++spare;
  }

  emit_h(pr, 1);

  // Remaining g monomials from shared storage.
  for (std::uint32_t mono : g_anf.monomials()) {
    if (kicked.count(mono)) continue;
    if (mono == 0) {
      emit_x(pr, 1);
      continue;
    }
    Controls c;
    for (std::size_t b = 0; b < xp_sorted.size(); ++b)
      if ((mono >> b) & 1u) {
        auto it = at.find(xp_sorted[b]);
        if (it == at.end())
          throw SpecError("gamma runner: x' variable lost from shared storage");
        c.emplace_back(it->second, 1);
      }
    emit_x(pr, 1, c);
  }

  if (pr.budget != mm_budget(n))
    throw std::logic_error("compile_gamma: budget mismatch");
  return pr;
}

Program compile_gamma(const GammaSpec& spec) { return compile_gamma_impl(spec, 0); }

Program compile_gamma_odd(const GammaSpec& even_spec) {
  Program pr = compile_gamma_impl(even_spec, 1);
  int m = even_spec.n + 1;  // total variable count, odd
  emit_read_pre(pr, m, {});
  emit_oracle(pr);
  emit_read_post(pr, m, {});
  emit_cnot_q_to_w(pr, 1);
  return pr;
}

RunTrace run_algorithm1(int n, Input x) { return execute(compile_algorithm1(n), x); }
RunTrace run_cor2(int n, Input x) { return execute(compile_cor2(n), x); }
RunTrace run_main_family(const MainFamilySpec& spec, Input x) {
  return execute(compile_main_family(spec), x);
}
RunTrace run_f_id(int n, Input x) { return execute(compile_f_id(n), x); }
RunTrace run_gamma(const GammaSpec& spec, Input x) {
  return execute(compile_gamma(spec), x);
}
RunTrace run_gamma_odd(const GammaSpec& even_spec, Input x) {
  return execute(compile_gamma_odd(even_spec), x);
}

}  // namespace qsep
