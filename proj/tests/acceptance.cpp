// Acceptance suite: one line per criterion, exit status 0 only if all pass.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qsep/algorithms.hpp"
#include "qsep/anf.hpp"
#include "qsep/classical.hpp"
#include "qsep/rng.hpp"
#include "qsep/spectrum.hpp"

using namespace qsep;

namespace {

struct Harness {
  int failures = 0;

  void run(int id, const std::string& what, const std::function<bool()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string err;
    try {
      ok = body();
    } catch (const std::exception& e) {
      err = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %d: %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", id,
                what.c_str(), secs, err.empty() ? "" : " error: ", err.c_str());
    if (!ok) ++failures;
  }
};

const double R2 = 1.0 / std::sqrt(2.0);

bool require(bool cond) { return cond; }

QState gamma_state(int xa, int xb, int xc, int xd, const std::vector<Amp>& w1v,
                   const std::vector<Amp>& w2v) {
  Layout lay{4, 4};
  QState st(lay);
  st.raw().assign(st.raw().size(), Amp(0, 0));
  for (std::uint32_t m = 0; m < 4; ++m) {
    st.raw()[(std::size_t(xa) << lay.w) | (std::uint32_t(xb) << 1) | (m << 2)] = R2 * w1v[m];
    st.raw()[(std::size_t(xc) << lay.w) | 1u | (std::uint32_t(xd) << 1) | (m << 2)] = R2 * w2v[m];
  }
  return st;
}

bool exhaustive(const Program& prog, const TruthTable& tt, std::uint64_t budget) {
  for (Input x = 0; x < tt.size(); ++x) {
    RunTrace rt = execute(prog, x);
    if (rt.output != int(tt.get(x)) || rt.queries != budget ||
        rt.final_state_purity > kSupportTol)
      return false;
  }
  return true;
}

bool audit(const Program& prog, std::uint32_t inputs, std::uint64_t budget) {
  SplitMix64 rng(99);
  for (int round = 0; round < 25; ++round) {
    std::vector<TraceRow> rows;
    RunTrace rt = execute(prog, Input(rng.below(inputs)), &rows);
    std::uint64_t oracles = 0;
    for (const auto& r : rows) oracles += r.op == "oracle";
    if (oracles != budget || rt.queries != budget) return false;
  }
  return true;
}

}  // namespace

int main() {
  Harness h;

  h.run(1, "untangling: 16 assignments x 50 work registers, fidelity >= 1-1e-12, 1 query", [] {
    SplitMix64 rng(7);
    for (int bits = 0; bits < 16; ++bits) {
      int xa = bits & 1, xb = (bits >> 1) & 1, xc = (bits >> 2) & 1, xd = (bits >> 3) & 1;
      for (int round = 0; round < 50; ++round) {
        std::vector<Amp> w1v(4), w2v(4);
        double n1 = 0, n2 = 0;
        for (int m = 0; m < 4; ++m) {
          w1v[m] = Amp(double(rng.next() % 1999) - 999, double(rng.next() % 1999) - 999);
          w2v[m] = Amp(double(rng.next() % 1999) - 999, double(rng.next() % 1999) - 999);
          n1 += std::norm(w1v[m]);
          n2 += std::norm(w2v[m]);
        }
        for (int m = 0; m < 4; ++m) {
          w1v[m] /= std::sqrt(n1);
          w2v[m] /= std::sqrt(n2);
        }
        QState st = gamma_state(xa, xb, xc, xd, w1v, w2v);
        Input x = Input(xa) | (Input(xb) << 1) | (Input(xc) << 2) | (Input(xd) << 3);
        untangle_step(st, 1, 2, 3, 4, x);
        if (st.queries() != 1) return false;
        Amp inner(0, 0);
        double sign = xb ? -1.0 : 1.0;
        for (std::uint32_t m = 0; m < 4; ++m) {
          inner += std::conj(sign * R2 * w1v[m]) *
                   st.amp(xb, (std::uint32_t(xd) << 1) | (m << 2));
          inner += std::conj(sign * R2 * w2v[m]) *
                   st.amp(xb, 1u | (std::uint32_t(xd) << 1) | (m << 2));
        }
        if (std::norm(inner) < 1.0 - 1e-12) return false;
      }
    }
    return true;
  });

  h.run(2, "product-pair algorithm exact at n in {6,10,14} with floor(3n/4) queries", [] {
    for (int n : {6, 10, 14}) {
      PdspSpec spec;
      spec.n = n;
      std::vector<int> lead, tail;
      for (int i = 1; i <= n / 2; ++i) lead.push_back(i);
      for (int i = n / 2 + 1; i <= n; ++i) tail.push_back(i);
      spec.hat_vars = lead;
      spec.hat_vars.insert(spec.hat_vars.end(), tail.begin(), tail.end());
      spec.monomials = {lead, tail};
      if (!exhaustive(compile_algorithm1(n), make_pdsp(spec), algorithm1_budget(n)))
        return false;
      if (algorithm1_budget(n) != std::uint64_t(n == 6 ? 4 : n == 10 ? 7 : 10))
        return false;
    }
    return true;
  });

  h.run(3, "general family: exactness, budgets, D-plus = n-t, tree cost n-t, pdeg = n", [] {
    struct Case {
      MainFamilySpec spec;
    };
    std::vector<MainFamilySpec> cases = {{10, 1, {{8, 9, 10}}},
                                         {14, 1, {{11, 12, 13, 14}}}};
    for (const auto& spec : cases) {
      auto [tt, induced] = make_main_family(spec);
      if (!exhaustive(compile_main_family(spec), tt, algorithm1_budget(spec.n)))
        return false;
      if (dplus_lower_bound(tt) != spec.n - spec.t) return false;
      if (real_poly_degree(tt) != spec.n) return false;
      for (Input x = 0; x < tt.size(); ++x) {
        ParityTreeTrace tr = pdsp_parity_tree(induced, x);
        if (tr.queries != spec.n - spec.t || tr.output != int(tt.get(x)))
          return false;
      }
    }
    // n = 14, t = 2 admits no feasible partition (two blocks of size >= 3
    // inside 4 variables); the constructor must reject every attempt.
    try {
      make_main_family(MainFamilySpec{14, 2, {{11, 12}, {13, 14}}});
      return false;
    } catch (const SpecError&) {
    }
    return true;
  });

  h.run(4, "granularity law on 20 generated pdsp instances (n <= 12)", [] {
    struct Combo {
      int n, l, q;
    };
    const Combo combos[] = {{4, 4, 2},  {5, 4, 2},  {6, 4, 2},  {6, 5, 2},
                            {6, 6, 2},  {7, 6, 2},  {8, 6, 2},  {8, 8, 2},
                            {9, 9, 3},  {10, 9, 3}, {10, 10, 2}, {11, 9, 3},
                            {12, 9, 3}, {12, 10, 3}, {12, 12, 3}, {12, 12, 2},
                            {8, 7, 2},  {9, 8, 2},  {11, 11, 3}, {10, 8, 2}};
    int idx = 0;
    for (const Combo& c : combos) {
      TruthTable tt = make_pdsp(random_pdsp_spec(c.n, c.l, c.q, 500 + idx++));
      if (granularity(walsh_coefficient(tt, 0)) != c.n - c.q) return false;
      if (max_granularity(tt) != c.n - c.q) return false;
    }
    return idx == 20;
  });

  h.run(5, "mm runners exact: f_id n in {4..12}, seeded Gamma(8)/Gamma(12), odd n = 9", [] {
    const std::uint64_t budgets[] = {3, 4, 5, 7, 8};
    int bi = 0;
    for (int n : {4, 6, 8, 10, 12}) {
      if (mm_budget(n) != budgets[bi++]) return false;
      if (!exhaustive(compile_f_id(n), make_f_id(n), mm_budget(n))) return false;
    }
    if (mm_budget(6) != 4) return false;  // matches the known exact optimum
    for (int n : {8, 12})
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        GammaSpec spec = random_gamma_spec(n, seed);
        if (!exhaustive(compile_gamma(spec), make_gamma(spec), mm_budget(n)))
          return false;
      }
    {
      GammaSpec base = random_gamma_spec(8, 42);
      Program prog = compile_gamma_odd(base);
      TruthTable even = make_gamma(base);
      for (Input x = 0; x < (1u << 9); ++x) {
        RunTrace rt = execute(prog, x);
        if (rt.queries != 6) return false;
        if (rt.output != (int(even.get(x & 0xffu)) ^ bit_of(x, 9))) return false;
      }
    }
    return true;
  });

  h.run(6, "brute-force concordance at n = 4 and the complexity chain", [] {
    TruthTable pair4 = anf_to_truth_table(Anf(4, {0b0011u, 0b1100u}));
    if (brute_force_Dplus(pair4) != 3 || dplus_lower_bound(pair4) != 3) return false;
    if (brute_force_D(pair4) != 4 || real_poly_degree(pair4) != 4) return false;
    SplitMix64 rng(606);
    for (int round = 0; round < 200; ++round) {
      TruthTable tt(4);
      for (Input a = 0; a < 16; ++a) tt.set(a, rng.next() & 1u);
      int lb = dplus_lower_bound(tt), dp = brute_force_Dplus(tt), d = brute_force_D(tt);
      if (!(lb <= dp && dp <= d && d <= 4)) return false;
    }
    return true;
  });

  h.run(7, "counting: class sizes as exact big integers", [] {
    return require(count_main_family(16) == 1) && count_main_family(36) == 3 &&
           count_main_family(40) == 4 && count_gamma_raw(8).first == 37748736;
  });

  h.run(8, "unitarity sweep: all gate constructors, n <= 10, defect <= 1e-12", [] {
    for (int n = 1; n <= 10; ++n) {
      for (int i = 1; i <= n; ++i)
        if (perm_gate(n, i).report().defect > kUnitarityTol) return false;
      for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
          if (par_gate(n, i, j).report().defect > kUnitarityTol) return false;
          if (sup_gate(n, i, j).report().defect > kUnitarityTol) return false;
        }
    }
    return true;
  });

  h.run(9, "oracle audit: trace query count equals the advertised budget", [] {
    if (!audit(compile_algorithm1(10), 1u << 10, algorithm1_budget(10))) return false;
    if (!audit(compile_cor2(10), 1u << 10, algorithm1_budget(10))) return false;
    MainFamilySpec m{10, 1, {{8, 9, 10}}};
    if (!audit(compile_main_family(m), 1u << 10, algorithm1_budget(10))) return false;
    if (!audit(compile_f_id(12), 1u << 12, mm_budget(12))) return false;
    GammaSpec g = random_gamma_spec(12, 3);
    if (!audit(compile_gamma(g), 1u << 12, mm_budget(12))) return false;
    GammaSpec g8 = random_gamma_spec(8, 3);
    if (!audit(compile_gamma_odd(g8), 1u << 9, mm_budget(8) + 1)) return false;
    return true;
  });

  if (h.failures) {
    std::printf("%d criterion(s) failed\n", h.failures);
    return 1;
  }
  std::printf("all 9 criteria passed\n");
  return 0;
}
