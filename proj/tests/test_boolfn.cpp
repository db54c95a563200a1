#include <doctest.h>

#include "qsep/anf.hpp"
#include "qsep/rng.hpp"
#include "qsep/spectrum.hpp"

using namespace qsep;

namespace {

// Independent reference evaluation of an ANF, used as the oracle for the
// table conversions.
int eval_anf(const Anf& a, Input x) {
  int v = 0;
  for (std::uint32_t m : a.monomials())
    if ((x & m) == m) v ^= 1;
  return v;
}

TruthTable random_table(int n, SplitMix64& rng) {
  TruthTable tt(n);
  for (Input a = 0; a < tt.size(); ++a) tt.set(a, rng.next() & 1u);
  return tt;
}

}  // namespace

TEST_CASE("anf evaluation against the truth table") {
  Anf and2(2, {0b11u});
  TruthTable tt = anf_to_truth_table(and2);
  CHECK(tt.to_hex() == "8");  // bits 0001, indices 0..3
  for (Input x = 0; x < 4; ++x) CHECK(int(tt.get(x)) == eval_anf(and2, x));

  Anf pair4(4, {0b0011u, 0b1100u});  // x1x2 + x3x4
  TruthTable tt4 = anf_to_truth_table(pair4);
  std::uint64_t w = 0;
  for (Input x = 0; x < 16; ++x) w += eval_anf(pair4, x);
  CHECK(w == 6);
  CHECK(tt4.weight() == 6);

  Anf one(1, {0u});
  TruthTable c1 = anf_to_truth_table(one);
  CHECK(c1.get(0));
  CHECK(c1.get(1));
}

TEST_CASE("moebius transform round trip and known forms") {
  TruthTable or2(2);
  or2.set(1, 1);
  or2.set(2, 1);
  or2.set(3, 1);
  Anf a = truth_table_to_anf(or2);
  CHECK(a.monomials() == std::set<std::uint32_t>{0b01u, 0b10u, 0b11u});

  TruthTable and2 = TruthTable::from_hex("8", 2);
  CHECK(truth_table_to_anf(and2).monomials() == std::set<std::uint32_t>{0b11u});

  SplitMix64 rng(7);
  for (int round = 0; round < 1000; ++round) {
    int n = 1 + int(rng.below(10));
    TruthTable tt = random_table(n, rng);
    CHECK(anf_to_truth_table(truth_table_to_anf(tt)) == tt);
  }
}

TEST_CASE("anf text format") {
  Anf a = Anf::parse("x1*x2 + x3*x4");
  CHECK(a.n() == 4);
  CHECK(a.monomials() == std::set<std::uint32_t>{0b0011u, 0b1100u});
  CHECK(Anf::parse("x1x2 + x3x4").monomials() == a.monomials());
  CHECK(Anf::parse("1").monomials() == std::set<std::uint32_t>{0u});
  CHECK(Anf::parse(a.str()).monomials() == a.monomials());
  CHECK_THROWS_WITH_AS(Anf::parse("x0"), doctest::Contains("1-based"),
                       std::invalid_argument);
  CHECK_THROWS_AS(Anf::parse("x1 + + x2"), std::invalid_argument);
}

TEST_CASE("hex table round trip") {
  SplitMix64 rng(13);
  for (int round = 0; round < 200; ++round) {
    int n = 1 + int(rng.below(8));
    TruthTable tt = random_table(n, rng);
    CHECK(TruthTable::from_hex(tt.to_hex(), n) == tt);
  }
  CHECK_THROWS_AS(TruthTable::from_hex("123", 4), std::invalid_argument);
}

TEST_CASE("walsh coefficients") {
  // f = x1: balanced linear function.
  TruthTable x1(1);
  x1.set(1, 1);
  CHECK(walsh_coefficient(x1, 0).is_zero());
  CHECK(walsh_coefficient(x1, 1) == Dyadic::make(1, 0));

  TruthTable pair4 = anf_to_truth_table(Anf(4, {0b0011u, 0b1100u}));
  CHECK(walsh_coefficient(pair4, 0) == Dyadic::make(1, 2));  // (16-12)/16

  // Identity MM function on 4 variables: flat spectrum of magnitude 1/4.
  TruthTable fid4 = anf_to_truth_table(Anf(4, {0b0101u, 0b1010u}));
  for (std::uint32_t s = 0; s < 16; ++s) {
    Dyadic c = walsh_coefficient(fid4, s);
    CHECK(std::abs(c.num) == 1);
    CHECK(c.exp == 2);
  }
}

TEST_CASE("fast transform agrees with the exhaustive sum") {
  SplitMix64 rng(99);
  for (int round = 0; round < 40; ++round) {
    int n = 1 + int(rng.below(8));
    TruthTable tt = random_table(n, rng);
    auto spec = walsh_spectrum_scaled(tt);
    for (std::uint32_t s = 0; s < tt.size(); ++s) {
      Dyadic c = walsh_coefficient(tt, s);
      CHECK(Dyadic::make(spec[s], n) == c);
    }
  }
}

TEST_CASE("granularity") {
  CHECK(granularity(Dyadic::make(1, 2)) == 2);   // 1/4
  CHECK(granularity(Dyadic::make(0, 0)) == 0);   // zero is integral
  CHECK(granularity(Dyadic::make(3, 3)) == 3);   // 3/8
  CHECK(granularity(Dyadic::make(4, 0)) == 0);   // integers reduce below zero

  TruthTable pair4 = anf_to_truth_table(Anf(4, {0b0011u, 0b1100u}));
  CHECK(max_granularity(pair4) == 2);
  CHECK(max_granularity(make_f_id(6)) == 3);
  TruthTable x1(1);
  x1.set(1, 1);
  CHECK(max_granularity(x1) == 0);
}

TEST_CASE("parseval holds exactly") {
  SplitMix64 rng(3);
  for (int round = 0; round < 30; ++round) {
    int n = 1 + int(rng.below(12));
    TruthTable tt = random_table(n, rng);
    auto spec = walsh_spectrum_scaled(tt);
    // sum of (c/2^n)^2 == 1  <=>  sum c^2 == 4^n
    std::int64_t sum = 0;
    for (std::int32_t c : spec) sum += std::int64_t(c) * c;
    CHECK(sum == (std::int64_t(1) << (2 * n)));
    // f^(empty) = (2^n - 2 wt) / 2^n
    CHECK(Dyadic::make(spec[0], n) ==
          Dyadic::make((std::int64_t(1) << n) - 2 * std::int64_t(tt.weight()), n));
  }
}

TEST_CASE("real polynomial degree") {
  TruthTable and2 = TruthTable::from_hex("8", 2);
  CHECK(real_poly_degree(and2) == 2);
  TruthTable pair4 = anf_to_truth_table(Anf(4, {0b0011u, 0b1100u}));
  CHECK(real_poly_degree(pair4) == 4);
  TruthTable xor2 = anf_to_truth_table(Anf(2, {0b01u, 0b10u}));
  CHECK(real_poly_degree(xor2) == 2);
  TruthTable zero(3);
  CHECK(real_poly_degree(zero) == 0);
}

TEST_CASE("generated pdsp instances have granularity n - q and degree n") {
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
    PdspSpec spec = random_pdsp_spec(c.n, c.l, c.q, 1000 + idx++);
    TruthTable tt = make_pdsp(spec);
    CHECK(granularity(walsh_coefficient(tt, 0)) == c.n - c.q);
    CHECK(max_granularity(tt) == c.n - c.q);
    CHECK(real_poly_degree(tt) == c.n);
  }
}
