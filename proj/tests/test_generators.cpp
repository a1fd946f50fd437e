#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "qgen/formula.hpp"
#include "qgen/generators.hpp"
#include "qgen/oracle.hpp"
#include "qgen/rng.hpp"
#include "support/stats.hpp"

using namespace qgen;

namespace {

// Splits a clause into (universal literals, rest) preserving order.
std::pair<std::vector<Literal>, std::vector<Literal>> split_universals(const Clause& c) {
  std::vector<Literal> uni, rest;
  for (const Literal& l : c.literals()) {
    (l.var.block == VarBlock::Universal ? uni : rest).push_back(l);
  }
  return {uni, rest};
}

// Checks the per-clause shape common to the two-block families: exactly
// `a` universal and `e` existential literals, distinct variables (enforced
// by Clause), indices within range (enforced by CnfFormula).
void check_block_widths(const CnfFormula& f, std::size_t a, std::size_t e) {
  for (const Clause& c : f.clauses()) {
    auto [uni, rest] = split_universals(c);
    CHECK(uni.size() == a);
    CHECK(rest.size() == e);
    for (const Literal& l : rest) CHECK(l.var.block == VarBlock::Existential);
  }
}

}  // namespace

TEST_SUITE_BEGIN("generators");

TEST_CASE("k-CNF: m clauses of k distinct plain variables") {
  RandomSource rng(1, 0, 0);
  CnfFormula f = gen_kcnf(3, 5, 40, rng);
  const VarCounts plain_universe{0, 0, 5, 0};
  CHECK(f.vars() == plain_universe);
  REQUIRE(f.clauses().size() == 40);
  for (const Clause& c : f.clauses()) {
    CHECK(c.size() == 3);
    for (const Literal& l : c.literals()) CHECK(l.var.block == VarBlock::Plain);
  }
}

TEST_CASE("k-CNF: uniform over the full clause space") {
  // k = n = 3 collapses the variable choice; the 8 sign patterns must be
  // equally likely. 8000 one-clause samples, chi-square at the 1% level.
  std::vector<long> cells(8, 0);
  for (int i = 0; i < 8000; ++i) {
    RandomSource rng(103, static_cast<std::uint64_t>(i), 0);
    CnfFormula f = gen_kcnf(3, 3, 1, rng);
    int key = 0;
    for (const Literal& l : f.clauses()[0].literals()) {
      key = key * 2 + (l.positive ? 1 : 0);
    }
    ++cells[key];
  }
  CHECK(teststats::chi2_uniform_pvalue(cells) > 0.01);
}

TEST_CASE("two-block model: per-clause block widths") {
  RandomSource rng(2, 0, 0);
  CnfQbf q = gen_chen_interian(1, 3, 70, 70, 350, rng);
  CHECK(q.universals() == 70);
  CHECK(q.existentials() == 70);
  REQUIRE(q.matrix().components().size() == 1);
  const CnfFormula& f = q.matrix().components()[0];
  CHECK(f.clauses().size() == 350);
  check_block_widths(f, 1, 3);
}

TEST_CASE("two-block model: a=0 degenerates to an existential k-CNF") {
  RandomSource rng(3, 0, 0);
  CnfQbf q = gen_chen_interian(0, 2, 4, 6, 9, rng);
  check_block_widths(q.matrix().components()[0], 0, 2);
}

TEST_CASE("two-block model: mean retained clause count after restriction") {
  // One universal literal per clause survives a uniform assignment with
  // probability 1/2, so restriction keeps Binomial(32, 1/2) clauses: mean 16,
  // per-instance variance 8. The sample mean over N instances must land
  // within 3 standard errors.
  const int n_samples = 2000;
  RandomSource coin(555, 0, 0);
  double total = 0;
  for (int i = 0; i < n_samples; ++i) {
    RandomSource rng(200, static_cast<std::uint64_t>(i), 0);
    CnfQbf q = gen_chen_interian(1, 3, 8, 8, 32, rng);
    Assignment a = Assignment::universals_from_bits(8, coin.uniform(256));
    total += static_cast<double>(
        restrict_universals(q.matrix().components()[0], a).clauses().size());
  }
  const double mean = total / n_samples;
  const double se = std::sqrt(8.0 / n_samples);
  CHECK(std::fabs(mean - 16.0) < 3.0 * se);
}

TEST_CASE("controlled model: fixed literal-to-clause mapping and exact residuals") {
  RandomSource rng(7, 0, 0);
  CnfQbf q = gen_controlled(4, 3, 5, rng);
  const CnfFormula& f = q.matrix().components()[0];
  REQUIRE(f.clauses().size() == 6);
  check_block_widths(f, 1, 3);
  for (int i = 1; i <= 3; ++i) {
    auto [uni_odd, r1] = split_universals(f.clauses()[static_cast<std::size_t>(2 * i - 2)]);
    auto [uni_even, r2] = split_universals(f.clauses()[static_cast<std::size_t>(2 * i - 1)]);
    CHECK(uni_odd[0] == pos(VarBlock::Universal, static_cast<std::uint32_t>(i)));
    CHECK(uni_even[0] == neg(VarBlock::Universal, static_cast<std::uint32_t>(i)));
  }
  // Exactly A clauses survive every one of the 2^A universal assignments.
  for (std::uint64_t bits = 0; bits < 8; ++bits) {
    CnfFormula r = restrict_universals(f, Assignment::universals_from_bits(3, bits));
    CHECK(r.clauses().size() == 3);
    for (const Clause& c : r.clauses()) CHECK(c.size() == 3);
  }
}

TEST_CASE("controlled model: existential parts are a uniform (k-1)-CNF") {
  // At (k,A,E) = (3,2,3) each clause's existential part ranges over
  // C(3,2) * 4 = 12 equally likely 2-literal clauses. Pool all 2A clauses of
  // 5000 instances and chi-square the 12 cells.
  std::vector<long> cells(12, 0);
  for (int s = 0; s < 5000; ++s) {
    RandomSource rng(300, static_cast<std::uint64_t>(s), 0);
    CnfQbf q = gen_controlled(3, 2, 3, rng);
    for (const Clause& c : q.matrix().components()[0].clauses()) {
      auto [uni, rest] = split_universals(c);
      REQUIRE(rest.size() == 2);
      const int i = static_cast<int>(rest[0].var.index);
      const int j = static_cast<int>(rest[1].var.index);
      int pair_rank = (i == 1) ? (j == 2 ? 0 : 1) : 2;  // {1,2},{1,3},{2,3}
      int signs = (rest[0].positive ? 1 : 0) * 2 + (rest[1].positive ? 1 : 0);
      ++cells[static_cast<std::size_t>(pair_rank * 4 + signs)];
    }
  }
  CHECK(teststats::chi2_uniform_pvalue(cells) > 0.01);
}

TEST_CASE("generalized controlled model: the 12-clause enumeration") {
  // h=2, k=5, A=3, E=4: combinations in lexicographic order, sign patterns
  // in binary counting order (low bit negates the smallest variable).
  RandomSource rng(11, 0, 0);
  CnfQbf q = gen_gctd(2, 5, 3, 4, rng);
  const CnfFormula& f = q.matrix().components()[0];
  REQUIRE(f.clauses().size() == 12);

  using P = std::pair<int, int>;  // the two signed universal variables
  const std::vector<P> expected = {
      {+1, +2}, {-1, +2}, {+1, -2}, {-1, -2},
      {+1, +3}, {-1, +3}, {+1, -3}, {-1, -3},
      {+2, +3}, {-2, +3}, {+2, -3}, {-2, -3},
  };
  for (std::size_t i = 0; i < 12; ++i) {
    auto [uni, rest] = split_universals(f.clauses()[i]);
    REQUIRE(uni.size() == 2);
    CHECK(rest.size() == 3);
    const P got{static_cast<int>(uni[0].var.index) * (uni[0].positive ? 1 : -1),
                static_cast<int>(uni[1].var.index) * (uni[1].positive ? 1 : -1)};
    CHECK(got == expected[i]);
  }

  // Every universal assignment keeps exactly C(3,2) = 3 clauses of width 3.
  for (std::uint64_t bits = 0; bits < 8; ++bits) {
    CnfFormula r = restrict_universals(f, Assignment::universals_from_bits(3, bits));
    CHECK(r.clauses().size() == 3);
    for (const Clause& c : r.clauses()) CHECK(c.size() == 3);
  }

  // The assignment x1=T, x2=F, x3=F keeps exactly positions 2, 6, 9
  // (1-based) of the enumeration, i.e. the clauses whose universal parts are
  // {-x1, x2}, {-x1, x3}, {x2, x3}.
  Assignment sigma;
  sigma.set({VarBlock::Universal, 1}, true);
  sigma.set({VarBlock::Universal, 2}, false);
  sigma.set({VarBlock::Universal, 3}, false);
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < 12; ++i) {
    auto [uni, rest] = split_universals(f.clauses()[i]);
    bool all_false = true;
    for (const Literal& l : uni) all_false = all_false && !eval(l, sigma);
    if (all_false) kept.push_back(i + 1);
  }
  const std::vector<std::size_t> expected_kept{2, 6, 9};
  CHECK(kept == expected_kept);
  CHECK(restrict_universals(f, sigma).clauses().size() == 3);
}

TEST_CASE("generalized controlled model: clause count formula") {
  RandomSource rng(13, 0, 0);
  CHECK(gen_gctd(1, 3, 4, 2, rng).matrix().components()[0].clauses().size() == 8);    // C(4,1)*2
  CHECK(gen_gctd(3, 4, 5, 2, rng).matrix().components()[0].clauses().size() == 80);   // C(5,3)*8
  CHECK(gen_gctd(2, 3, 6, 4, rng).matrix().components()[0].clauses().size() == 60);   // C(6,2)*4
}

TEST_CASE("generalized controlled model at h=1 matches the controlled model") {
  // Same clause pairing (x1, -x1, x2, -x2) and the same uniform existential
  // parts; chi-square both existential-part distributions at (3, 2, 2).
  std::vector<long> ctd_cells(4, 0), gctd_cells(4, 0);
  for (int s = 0; s < 5000; ++s) {
    RandomSource r1(400, static_cast<std::uint64_t>(s), 0);
    RandomSource r2(401, static_cast<std::uint64_t>(s), 0);
    CnfQbf qc = gen_controlled(3, 2, 2, r1);
    CnfQbf qg = gen_gctd(1, 3, 2, 2, r2);
    const auto& fc = qc.matrix().components()[0].clauses();
    const auto& fg = qg.matrix().components()[0].clauses();
    REQUIRE(fc.size() == 4);
    REQUIRE(fg.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
      auto [uc, rc] = split_universals(fc[i]);
      auto [ug, rg] = split_universals(fg[i]);
      CHECK(uc == ug);  // identical universal-part enumeration
      REQUIRE(rc.size() == 2);
      REQUIRE(rg.size() == 2);
      ++ctd_cells[static_cast<std::size_t>((rc[0].positive ? 2 : 0) + (rc[1].positive ? 1 : 0))];
      ++gctd_cells[static_cast<std::size_t>((rg[0].positive ? 2 : 0) + (rg[1].positive ? 1 : 0))];
    }
  }
  CHECK(teststats::chi2_uniform_pvalue(ctd_cells) > 0.01);
  CHECK(teststats::chi2_uniform_pvalue(gctd_cells) > 0.01);
}

TEST_CASE("smooth model: universal count from the clause budget") {
  CHECK(smooth_universal_count(2, 420) == 15);  // 4*C(15,2) = 420
  CHECK(smooth_universal_count(2, 364) == 14);  // 4*C(14,2) = 364
  CHECK(smooth_universal_count(2, 365) == 15);
  CHECK(smooth_universal_count(2, 1) == 2);
  CHECK(smooth_universal_count(1, 7) == 4);     // 2*C(4,1) = 8 >= 7 > 6
}

TEST_CASE("smooth model: anchors and structure") {
  RandomSource rng(17, 0, 0);
  CnfQbf q = gen_sgctd(2, 5, 32, 420, rng);
  CHECK(q.universals() == 15);
  CHECK(q.matrix().components()[0].clauses().size() == 420);
  check_block_widths(q.matrix().components()[0], 2, 3);

  RandomSource rng2(17, 0, 0);
  CHECK(gen_sgctd(2, 5, 32, 364, rng2).universals() == 14);
}

TEST_CASE("smooth model: full budget reproduces the exhaustive enumeration") {
  // m = 2^h * C(A,h) selects every clause; the result must equal the
  // generalized controlled instance drawn from the same stream.
  RandomSource r1(19, 3, 0), r2(19, 3, 0);
  CnfQbf full = gen_sgctd(2, 5, 6, 24, r1);  // A = 4, 4*C(4,2) = 24
  CnfQbf base = gen_gctd(2, 5, 4, 6, r2);
  CHECK(full == base);
}

TEST_CASE("smooth model: subsampling preserves enumeration order") {
  RandomSource rng(23, 0, 0);
  CnfQbf q = gen_sgctd(2, 5, 6, 30, rng);  // A = 5, keeps 30 of 40
  CHECK(q.universals() == 5);
  const auto& clauses = q.matrix().components()[0].clauses();
  REQUIRE(clauses.size() == 30);

  // Enumeration rank of an X-part within the lex-combination / binary-sign
  // order; ranks along the output must be strictly increasing.
  std::vector<std::pair<int, int>> combos;
  for (int i = 1; i <= 5; ++i)
    for (int j = i + 1; j <= 5; ++j) combos.push_back({i, j});
  auto rank_of = [&](const Clause& c) {
    auto [uni, rest] = split_universals(c);
    REQUIRE(uni.size() == 2);
    const int i = static_cast<int>(uni[0].var.index);
    const int j = static_cast<int>(uni[1].var.index);
    const auto it = std::find(combos.begin(), combos.end(), std::pair<int, int>{i, j});
    REQUIRE(it != combos.end());
    const int pattern = (uni[0].positive ? 0 : 1) + (uni[1].positive ? 0 : 2);
    return static_cast<int>(it - combos.begin()) * 4 + pattern;
  };
  int prev = -1;
  for (const Clause& c : clauses) {
    const int r = rank_of(c);
    CHECK(r > prev);
    prev = r;
  }
}

TEST_CASE("multi-component instances: independent substreams and prefixes") {
  GenSpec t3{ChenInterianParams{1, 3, 24, 12, 40}, 3, 99, 4};
  GenSpec t1 = t3;
  t1.components = 1;
  GenSpec t2 = t3;
  t2.components = 2;

  const CnfQbf q3 = std::get<CnfQbf>(gen_instance(t3));
  const CnfQbf q2 = std::get<CnfQbf>(gen_instance(t2));
  const CnfQbf q1 = std::get<CnfQbf>(gen_instance(t1));
  REQUIRE(q3.matrix().components().size() == 3);
  for (const CnfFormula& f : q3.matrix().components()) {
    CHECK(f.clauses().size() == 40);
    check_block_widths(f, 1, 3);
  }
  // Component c depends only on (seed, index, c): smaller tuples are
  // prefixes of larger ones.
  CHECK(q3.matrix().components()[0] == q1.matrix().components()[0]);
  CHECK(q3.matrix().components()[0] == q2.matrix().components()[0]);
  CHECK(q3.matrix().components()[1] == q2.matrix().components()[1]);
  // And distinct components differ.
  CHECK(q3.matrix().components()[0] != q3.matrix().components()[1]);
}

TEST_CASE("multi-component satisfiability is empirically independent across components") {
  // t = 2 over C(3,10,42): the joint satisfaction frequency must match the
  // product of the marginals within 3 standard errors.
  const int n_samples = 1500;
  int sat0 = 0, sat1 = 0, both = 0;
  for (int i = 0; i < n_samples; ++i) {
    GenSpec s{KcnfParams{3, 10, 42}, 2, 71, static_cast<std::uint64_t>(i)};
    const MultiCnf mc = std::get<MultiCnf>(gen_instance(s));
    const bool s0 = sat_decide(mc.components()[0]);
    const bool s1 = sat_decide(mc.components()[1]);
    sat0 += s0;
    sat1 += s1;
    both += s0 && s1;
  }
  const double p0 = static_cast<double>(sat0) / n_samples;
  const double p1 = static_cast<double>(sat1) / n_samples;
  const double pb = static_cast<double>(both) / n_samples;
  const double var = pb * (1 - pb) / n_samples + p1 * p1 * p0 * (1 - p0) / n_samples +
                     p0 * p0 * p1 * (1 - p1) / n_samples;
  CHECK(std::fabs(pb - p0 * p1) < 3.0 * std::sqrt(var) + 1e-9);
}

TEST_CASE("identical specs regenerate identical instances") {
  GenSpec s{SmoothGctdParams{2, 5, 16, 100}, 2, 2024, 17};
  CHECK(gen_instance(s) == gen_instance(s));
  GenSpec other = s;
  other.instance_index = 18;
  CHECK(gen_instance(s) != gen_instance(other));
}

TEST_CASE("parameter validation rejects out-of-range specs") {
  auto bad = [](ModelParams m, int t = 1) {
    GenSpec s{std::move(m), t, 0, 0};
    CHECK_THROWS_AS(validate(s), std::invalid_argument);
  };
  bad(KcnfParams{4, 3, 5});            // k > n
  bad(KcnfParams{0, 3, 5});            // k < 1
  bad(KcnfParams{2, 3, -1});           // m < 0
  bad(ChenInterianParams{3, 1, 2, 4, 5});   // a > A
  bad(ChenInterianParams{1, 3, 2, 2, 5});   // e > E
  bad(ChenInterianParams{0, 0, 2, 2, 5});   // a + e < 1
  bad(ControlledParams{1, 2, 3});      // k < 2
  bad(ControlledParams{4, 0, 5});      // A < 1
  bad(ControlledParams{4, 2, 2});      // E < k-1
  bad(GenControlledParams{3, 3, 4, 4});     // h >= k
  bad(GenControlledParams{2, 5, 1, 4});     // A < h
  bad(GenControlledParams{2, 5, 3, 2});     // E < k-h
  bad(SmoothGctdParams{2, 5, 4, 0});   // m < 1
  bad(SmoothGctdParams{2, 5, 2, 8});   // E < k-h
  bad(KcnfParams{2, 3, 1}, 0);         // t < 1
}

TEST_CASE("describe and file_tag are stable") {
  GenSpec s{ControlledParams{4, 24, 12}, 3, 42, 0};
  CHECK(describe(s) == "model=ctd k=4 A=24 E=12 t=3 seed=42 index=0");
  CHECK(file_tag(s) == "k4_A24_E12_t3");
  GenSpec s2{SmoothGctdParams{2, 5, 32, 420}, 1, 1, 0};
  CHECK(describe(s2) == "model=sgctd h=2 k=5 E=32 m=420 t=1 seed=1 index=0");
  CHECK(file_tag(s2) == "h2_k5_E32_m420_t1");
  GenSpec s3{ChenInterianParams{1, 3, 24, 12, 76}, 1, 5, 0};
  CHECK(describe(s3) == "model=ci a=1 e=3 A=24 E=12 m=76 t=1 seed=5 index=0");
  CHECK(file_tag(s3) == "a1_e3_A24_E12_m76_t1");
}

TEST_SUITE_END();
