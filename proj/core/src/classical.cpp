#include "qsep/classical.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace qsep {

namespace {

int ask(ParityTreeTrace& tr, std::uint32_t mask, Input x) {
  int v = parity(x & mask);
  tr.parities.emplace_back(mask, v);
  ++tr.queries;
  return v;
}

}  // namespace

ParityTreeTrace pdsp_parity_tree(const PdspSpec& spec, Input x) {
  spec.validate();
  ParityTreeTrace tr;
  std::uint32_t linear = 0;
  bool any = false;
  std::vector<int> leftovers;
  for (const auto& mono : spec.monomials) {
    std::vector<int> vars = mono;
    std::sort(vars.begin(), vars.end());
    int last = vars.back();
    int partial = 1;
    for (std::size_t i = 0; i + 1 < vars.size(); ++i)
      partial &= ask(tr, 1u << (vars[i] - 1), x);
    if (partial) {
      linear |= 1u << (last - 1);
      any = true;
    }
    leftovers.push_back(last);
  }
  // One adaptive linear query; a placeholder singleton keeps the count
  // oblivious when no monomial survived.
  int lin_val = ask(tr, any ? linear : 1u << (leftovers.front() - 1), x);
  int f1 = any ? lin_val : 0;
  int f2 = 1;
  for (int v : spec.tilde_vars) f2 &= ask(tr, 1u << (v - 1), x);
  tr.output = f1 & f2;
  return tr;
}

ParityTreeTrace mm_generalized_parity_tree(const MmBentSpec& spec, Input x) {
  spec.validate();
  ParityTreeTrace tr;
  int h = spec.n / 2;
  std::uint32_t xhat = 0;
  for (int i = 1; i <= h; ++i) xhat |= std::uint32_t(ask(tr, 1u << (i - 1), x)) << (i - 1);
  std::uint32_t sel = spec.phi[xhat];
  int dot = 0;
  if (sel) dot = ask(tr, sel << h, x);
  tr.output = dot ^ (spec.g ? spec.g->get(xhat) : 0);
  // Same tree with 2-bit parities: h singles plus ceil(h/2) pair queries.
  tr.two_bit_cost = h + (h + 1) / 2;
  return tr;
}

namespace {

struct DepthSolver {
  const TruthTable& tt;
  int n;
  std::unordered_map<std::uint64_t, int> memo;

  bool constant_on(std::uint32_t mask, std::uint32_t vals) const {
    std::uint32_t free_mask = range_mask(1, n) & ~mask;
    int first = tt.get(vals);
    std::uint32_t sub = free_mask;
    for (;;) {
      if (int(tt.get(vals | sub)) != first) return false;
      if (sub == 0) break;
      sub = (sub - 1) & free_mask;
    }
    return true;
  }

  int depth(std::uint32_t mask, std::uint32_t vals) {
    if (constant_on(mask, vals)) return 0;
    std::uint64_t key = (std::uint64_t(mask) << n) | vals;
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    int best = std::numeric_limits<int>::max();
    for (int i = 0; i < n; ++i) {
      std::uint32_t bit = 1u << i;
      if (mask & bit) continue;
      int d = 1 + std::max(depth(mask | bit, vals), depth(mask | bit, vals | bit));
      best = std::min(best, d);
    }
    memo.emplace(key, best);
    return best;
  }
};

}  // namespace

int brute_force_D(const TruthTable& tt) {
  if (tt.n() > 14) throw std::invalid_argument("brute_force_D: n <= 14");
  DepthSolver s{tt, tt.n(), {}};
  return s.depth(0, 0);
}

namespace {

// Affine subspace of F_2^n as a reduced linear system: rows (mask, rhs)
// with distinct pivot bits (lowest set bit), no pivot occurring in another
// row. The canonical form doubles as the memo key.
struct AffineSolver {
  const TruthTable& tt;
  int n;
  std::map<std::vector<std::uint64_t>, int> memo;

  using Rows = std::vector<std::pair<std::uint32_t, int>>;

  static std::uint32_t pivot(std::uint32_t m) { return m & (~m + 1); }

  // Reduces (mask, rhs) by the rows; returns the reduced pair.
  static std::pair<std::uint32_t, int> reduce(const Rows& rows, std::uint32_t m, int r) {
    for (const auto& [rm, rr] : rows)
      if (m & pivot(rm)) {
        m ^= rm;
        r ^= rr;
      }
    return {m, r};
  }

  static Rows insert(Rows rows, std::uint32_t m, int r) {
    auto [rm, rr] = reduce(rows, m, r);
    if (rm == 0) throw std::logic_error("affine insert: dependent row");
    for (auto& [em, er] : rows)
      if (em & pivot(rm)) {
        em ^= rm;
        er ^= rr;
      }
    rows.emplace_back(rm, rr);
    std::sort(rows.begin(), rows.end());
    return rows;
  }

  std::vector<std::uint64_t> key(const Rows& rows) const {
    std::vector<std::uint64_t> k;
    for (const auto& [m, r] : rows) k.push_back((std::uint64_t(m) << 1) | unsigned(r));
    return k;
  }

  // All points of the coset, by sweeping the free bits.
  bool constant_on(const Rows& rows) const {
    std::uint32_t pivots = 0;
    for (const auto& [m, r] : rows) pivots |= pivot(m);
    std::uint32_t free_mask = range_mask(1, n) & ~pivots;
    int first = -1;
    std::uint32_t sub = free_mask;
    for (;;) {
      std::uint32_t x = sub;
      for (const auto& [m, r] : rows) {
        int bit = parity(x & (m & ~pivot(m))) ^ r;
        x |= std::uint32_t(bit) * pivot(m);
      }
      int v = tt.get(x);
      if (first < 0)
        first = v;
      else if (v != first)
        return false;
      if (sub == 0) break;
      sub = (sub - 1) & free_mask;
    }
    return true;
  }

  int depth(const Rows& rows) {
    if (constant_on(rows)) return 0;
    auto k = key(rows);
    auto it = memo.find(k);
    if (it != memo.end()) return it->second;
    int best = std::numeric_limits<int>::max();
    for (std::uint32_t s = 1; s < (1u << n); ++s) {
      if (reduce(rows, s, 0).first == 0) continue;  // already determined
      int d = 1 + std::max(depth(insert(rows, s, 0)), depth(insert(rows, s, 1)));
      best = std::min(best, d);
    }
    memo.emplace(std::move(k), best);
    return best;
  }
};

}  // namespace

int brute_force_Dplus(const TruthTable& tt) {
  if (tt.n() > 5) throw std::invalid_argument("brute_force_Dplus: n <= 5");
  AffineSolver s{tt, tt.n(), {}};
  return s.depth({});
}

}  // namespace qsep
