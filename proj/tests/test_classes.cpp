#include <doctest.h>

#include "qsep/anf.hpp"
#include "qsep/rng.hpp"
#include "qsep/spec_io.hpp"
#include "qsep/spectrum.hpp"

using namespace qsep;

TEST_CASE("make_pdsp matches the defining product") {
  PdspSpec p4{4, {1, 2, 3, 4}, {{1, 2}, {3, 4}}, {}};
  CHECK(make_pdsp(p4) == anf_to_truth_table(Anf(4, {0b0011u, 0b1100u})));

  PdspSpec p6{6, {1, 2, 3, 5, 6}, {{1, 2, 3}, {5, 6}}, {4}};
  // Expands to x1x2x3x4 + x4x5x6.
  CHECK(make_pdsp(p6) == anf_to_truth_table(Anf(6, {0b001111u, 0b111000u})));

  PdspSpec bad{4, {1, 2, 3}, {{1, 2}, {3}}, {4}};
  CHECK_THROWS_WITH_AS(make_pdsp(bad), doctest::Contains("at least q"), SpecError);

  PdspSpec dup{4, {1, 2, 3, 4}, {{1, 2}, {2, 3, 4}}, {}};
  CHECK_THROWS_WITH_AS(make_pdsp(dup), doctest::Contains("exactly one monomial"),
                       SpecError);
}

TEST_CASE("pdsp revalidates from scratch after generation") {
  for (int i = 0; i < 10; ++i) {
    PdspSpec spec = random_pdsp_spec(10, 9, 3, 77 + i);
    PdspSpec copy = spec;
    copy.validate();
    CHECK(copy.l() == 9);
    CHECK(copy.q() == 3);
  }
}

TEST_CASE("main family construction") {
  MainFamilySpec m{10, 1, {{8, 9, 10}}};
  auto [tt, induced] = make_main_family(m);
  // f = (x1..x5 + x8x9x10) x6x7 = x1..x7 + x6x7x8x9x10
  CHECK(tt == anf_to_truth_table(Anf(10, {0b0001111111u, 0b1111100000u})));
  CHECK(induced.l() == 8);  // ceil(3n/4)
  CHECK(induced.q() == 2);  // t + 1

  CHECK_THROWS_AS(make_main_family(MainFamilySpec{10, 1, {{8}}}), SpecError);
  // n=6: x' = {x5, x6}; a single block {x6} neither covers nor is large enough.
  CHECK_THROWS_AS(make_main_family(MainFamilySpec{6, 1, {{6}}}), SpecError);
}

TEST_CASE("main family counting") {
  CHECK(count_main_family(16) == 1);
  CHECK(count_main_family(36) == 3);
  CHECK(count_main_family(40) == 4);
  for (int n = 16; n <= 64; n += 2) CHECK(count_main_family(n) >= 1);
}

TEST_CASE("mm bent construction") {
  CHECK(make_f_id(4) == anf_to_truth_table(Anf(4, {0b0101u, 0b1010u})));
  CHECK(make_f_id(6) ==
        anf_to_truth_table(Anf(6, {0b001001u, 0b010010u, 0b100100u})));
  CHECK(make_f_id(2) == anf_to_truth_table(Anf(2, {0b11u})));

  MmBentSpec flat{4, {0, 0, 0, 0}, std::nullopt};
  CHECK_THROWS_WITH_AS(make_mm_bent(flat), doctest::Contains("bijection"), SpecError);
}

TEST_CASE("mm bent functions have a flat spectrum") {
  SplitMix64 rng(5);
  for (int n : {4, 6, 8}) {
    MmBentSpec spec;
    spec.n = n;
    spec.phi = random_permutation(std::size_t(1) << (n / 2), rng);
    TruthTable g(n / 2);
    for (Input a = 0; a < g.size(); ++a) g.set(a, rng.next() & 1u);
    spec.g = g;
    auto sc = walsh_spectrum_scaled(make_mm_bent(spec));
    for (std::int32_t c : sc) CHECK(std::abs(c) == (1 << (n / 2)));
  }
}

TEST_CASE("gamma construction and constraints") {
  GammaSpec g8;
  g8.n = 8;
  g8.y_hat = {1, 2};
  g8.z_hat = {3, 4};
  g8.y_tilde = {5, 6};
  g8.z_tilde = {7, 8};
  g8.phi1 = {0, 1, 2, 3};
  g8.phi2 = {0, 1, 2, 3};
  MmBentSpec mm;
  CHECK(make_gamma(g8, &mm) == make_f_id(8));
  CHECK(make_mm_bent(mm) == make_f_id(8));

  GammaSpec g6;
  g6.n = 6;
  g6.y_hat = {1};
  g6.z_hat = {2, 3};
  g6.y_tilde = {4};
  g6.z_tilde = {5, 6};
  g6.phi1 = {0, 1};
  g6.phi2 = {0, 1, 2, 3};
  CHECK(make_gamma(g6) == make_f_id(6));

  GammaSpec bad = g8;
  bad.x_prime = {1, 2};  // intersects y_hat in two variables; cap is 1
  TruthTable gt(2);
  bad.g = gt;
  CHECK_THROWS_WITH_AS(make_gamma(bad), doctest::Contains("constraint 4"), SpecError);

  GammaSpec overlap = g8;
  overlap.z_hat = {2, 4};
  CHECK_THROWS_WITH_AS(make_gamma(overlap), doctest::Contains("constraint 2"), SpecError);

  GammaSpec notperm = g8;
  notperm.phi1 = {0, 0, 2, 3};
  CHECK_THROWS_WITH_AS(make_gamma(notperm), doctest::Contains("constraint 1"), SpecError);

  GammaSpec gap = g8;
  gap.z_tilde = {7, 8};
  gap.y_tilde = {5, 7};
  CHECK_THROWS_AS(make_gamma(gap), SpecError);
}

TEST_CASE("gamma with concatenated permutation equals the mm construction") {
  SplitMix64 rng(11);
  for (int n : {4, 8}) {
    GammaSpec spec = random_gamma_spec(n, rng.next());
    MmBentSpec mm;
    TruthTable tt = make_gamma(spec, &mm);
    CHECK(tt == make_mm_bent(mm));
  }
}

TEST_CASE("gamma raw counting") {
  auto [raw8, q8] = count_gamma_raw(8);
  CHECK(raw8 == 37748736);
  CHECK(q8 == 1);
  auto [raw4, q4] = count_gamma_raw(4);
  CHECK(raw4 == 64);
}

TEST_CASE("pnp equivalence") {
  TruthTable and2 = TruthTable::from_hex("8", 2);
  TruthTable or2 = TruthTable::from_hex("e", 2);
  TruthTable comp = and2;
  for (Input a = 0; a < 4; ++a) comp.set(a, !comp.get(a));
  CHECK(pnp_equivalent(and2, comp));
  CHECK(pnp_equivalent(and2, or2));

  TruthTable x1(2), x12(2);
  x1.set(1, 1);
  x1.set(3, 1);
  x12.set(1, 1);
  x12.set(2, 1);
  CHECK_FALSE(pnp_equivalent(x1, x12));

  // Reflexive, symmetric, transitive on random triples.
  SplitMix64 rng(21);
  for (int round = 0; round < 5; ++round) {
    TruthTable f(4);
    for (Input a = 0; a < 16; ++a) f.set(a, rng.next() & 1u);
    CHECK(pnp_equivalent(f, f));
    // g: complement the output; h: additionally swap x_1 and x_2 and flip x_3.
    TruthTable g = f, h(4);
    for (Input a = 0; a < 16; ++a) g.set(a, !g.get(a));
    for (Input a = 0; a < 16; ++a) {
      Input b = (a & 0b1000u) | ((a & 1u) << 1) | ((a >> 1) & 1u) | ((a & 0b100u) ^ 0b100u);
      h.set(a, g.get(b));
    }
    CHECK(pnp_equivalent(f, g));
    CHECK(pnp_equivalent(g, f));
    CHECK(pnp_equivalent(g, h));
    CHECK(pnp_equivalent(f, h));
  }
}

TEST_CASE("function spec json round trip") {
  GammaSpec g = random_gamma_spec(8, 42);
  FunctionSpec spec = g;
  auto j = function_spec_json(spec);
  FunctionSpec back = parse_function_spec(j);
  CHECK(spec_truth_table(back) == spec_truth_table(spec));
  CHECK(spec_class_name(back) == "gamma");

  auto j2 = nlohmann::json{{"class", "f_id"}, {"n", 6}};
  CHECK(spec_truth_table(parse_function_spec(j2)) == make_f_id(6));

  auto bad = nlohmann::json{{"class", "nope"}, {"n", 4}};
  CHECK_THROWS_AS(parse_function_spec(bad), SpecError);
}
