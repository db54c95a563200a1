#include <doctest.h>

#include "qsep/anf.hpp"
#include "qsep/classical.hpp"
#include "qsep/rng.hpp"

using namespace qsep;

namespace {

TruthTable random_table(int n, SplitMix64& rng) {
  TruthTable tt(n);
  for (Input a = 0; a < tt.size(); ++a) tt.set(a, rng.next() & 1u);
  return tt;
}

void check_replay(const ParityTreeTrace& tr, Input x) {
  REQUIRE(tr.queries == int(tr.parities.size()));
  for (auto& [mask, v] : tr.parities) REQUIRE(v == parity(x & mask));
}

}  // namespace

TEST_CASE("pdsp parity tree: n - q + 1 queries on every input") {
  PdspSpec f1{6, {1, 2, 3, 4, 5, 6}, {{1, 2, 3}, {4, 5, 6}}, {}};
  TruthTable tt = make_pdsp(f1);
  for (Input x = 0; x < 64; ++x) {
    ParityTreeTrace tr = pdsp_parity_tree(f1, x);
    CHECK(tr.output == int(tt.get(x)));
    CHECK(tr.queries == 5);  // n - q + 1
    check_replay(tr, x);
  }

  MainFamilySpec m{10, 1, {{8, 9, 10}}};
  auto [mt, induced] = make_main_family(m);
  for (Input x = 0; x < 1024; ++x) {
    ParityTreeTrace tr = pdsp_parity_tree(induced, x);
    CHECK(tr.output == int(mt.get(x)));
    CHECK(tr.queries == 9);  // n - t
  }
  // The all-zero input short-circuits nothing.
  CHECK(pdsp_parity_tree(f1, 0).queries == 5);
}

TEST_CASE("mm parity tree") {
  for (int n : {4, 6}) {
    MmBentSpec spec;
    spec.n = n;
    spec.phi.resize(std::size_t(1) << (n / 2));
    std::iota(spec.phi.begin(), spec.phi.end(), 0u);
    TruthTable tt = make_mm_bent(spec);
    int worst = 0;
    for (Input x = 0; x < tt.size(); ++x) {
      ParityTreeTrace tr = mm_generalized_parity_tree(spec, x);
      CHECK(tr.output == int(tt.get(x)));
      check_replay(tr, x);
      worst = std::max(worst, tr.queries);
      if (spec.phi[x & ((1u << (n / 2)) - 1)] == 0)
        CHECK(tr.queries == n / 2);  // empty parity handled as constant 0
      CHECK(tr.two_bit_cost == (3 * n + 3) / 4);
    }
    CHECK(worst == n / 2 + 1);
  }
}

TEST_CASE("generalized parity lower bound") {
  TruthTable pair4 = anf_to_truth_table(Anf(4, {0b0011u, 0b1100u}));
  CHECK(dplus_lower_bound(pair4) == 3);
  CHECK(dplus_lower_bound(make_f_id(6)) == 4);
  Anf par6(6);
  for (int i = 0; i < 6; ++i) par6.toggle(1u << i);
  CHECK(dplus_lower_bound(anf_to_truth_table(par6)) == 1);
  MainFamilySpec m{10, 1, {{8, 9, 10}}};
  CHECK(dplus_lower_bound(make_main_family(m).first) == 9);  // n - t
}

TEST_CASE("brute force deterministic depth") {
  CHECK(brute_force_D(TruthTable::from_hex("8", 2)) == 2);
  CHECK(brute_force_D(make_f_id(4)) == 4);
  PdspSpec f1{6, {1, 2, 3, 4, 5, 6}, {{1, 2, 3}, {4, 5, 6}}, {}};
  CHECK(brute_force_D(make_pdsp(f1)) == 6);
  TruthTable zero(3);
  CHECK(brute_force_D(zero) == 0);
}

TEST_CASE("brute force generalized parity depth") {
  TruthTable pair4 = anf_to_truth_table(Anf(4, {0b0011u, 0b1100u}));
  CHECK(brute_force_Dplus(pair4) == 3);
  CHECK(brute_force_Dplus(pair4) == dplus_lower_bound(pair4));

  Anf par3(3, {0b001u, 0b010u, 0b100u});
  CHECK(brute_force_Dplus(anf_to_truth_table(par3)) == 1);

  TruthTable and3(3);
  and3.set(7, 1);
  CHECK(brute_force_Dplus(and3) == 3);
}

TEST_CASE("complexity chain on random functions") {
  SplitMix64 rng(1234);
  for (int round = 0; round < 200; ++round) {
    int n = 4;
    TruthTable tt = random_table(n, rng);
    int lb = dplus_lower_bound(tt);
    int dp = brute_force_Dplus(tt);
    int d = brute_force_D(tt);
    CHECK(lb <= dp);
    CHECK(dp <= d);
    CHECK(d <= n);
    CHECK(real_poly_degree(tt) <= d);
  }
  // A couple of n = 5 instances keep the larger solver honest.
  for (int round = 0; round < 3; ++round) {
    TruthTable tt = random_table(5, rng);
    CHECK(dplus_lower_bound(tt) <= brute_force_Dplus(tt));
    CHECK(brute_force_Dplus(tt) <= brute_force_D(tt));
  }
}

TEST_CASE("pdsp tree meets the lower bound exactly") {
  for (int i = 0; i < 6; ++i) {
    PdspSpec spec = random_pdsp_spec(8, 6, 2, 4000 + i);
    TruthTable tt = make_pdsp(spec);
    int budget = pdsp_parity_tree(spec, 0).queries;
    CHECK(budget == dplus_lower_bound(tt));
  }
}
