#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "doctest.h"
#include "qgen/rng.hpp"
#include "support/stats.hpp"

using namespace qgen;

TEST_SUITE_BEGIN("rng");

TEST_CASE("identical coordinates replay the identical stream") {
  RandomSource a(123456789u, 7, 2);
  RandomSource b(123456789u, 7, 2);
  for (int i = 0; i < 256; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("first outputs are pinned across builds and platforms") {
  // The generator and its stream-derivation constants are frozen; these
  // values must never change, or every seeded artifact changes under users.
  RandomSource a(42, 0, 0);
  CHECK(a.next_u64() == 5298505097307811455ull);
  CHECK(a.next_u64() == 8697547170875977962ull);
  CHECK(a.next_u64() == 15869861287641943733ull);
  CHECK(a.next_u64() == 3632973395542027632ull);
  CHECK(a.next_u64() == 6508698318492838391ull);

  RandomSource b(42, 1, 0);
  CHECK(b.next_u64() == 18308315899320057857ull);
  RandomSource c(42, 0, 1);
  CHECK(c.next_u64() == 7694669396158167399ull);

  CHECK(derive_seed(42, 0) == 16389234289310759295ull);
  CHECK(derive_seed(42, 7) == 16254382726697831444ull);
}

TEST_CASE("instance and component indices open distinct streams") {
  std::set<std::uint64_t> firsts;
  for (std::uint64_t idx = 0; idx < 64; ++idx) {
    firsts.insert(RandomSource(9, idx, 0).next_u64());
    firsts.insert(RandomSource(9, 0, idx).next_u64());
  }
  // 127 distinct coordinates (idx 0 appears twice); collisions among 64-bit
  // outputs would be astronomically unlikely.
  CHECK(firsts.size() == 127);
}

TEST_CASE("derive_seed yields distinct seeds over a long index range") {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 4096; ++i) seeds.insert(derive_seed(1, i));
  CHECK(seeds.size() == 4096);
}

TEST_CASE("uniform(n) stays in range and covers degenerate n") {
  RandomSource rng(5, 0, 0);
  for (int i = 0; i < 1000; ++i) CHECK(rng.uniform(1) == 0);
  for (int i = 0; i < 10000; ++i) {
    CHECK(rng.uniform(7) < 7);
    CHECK(rng.uniform(1000000007ull) < 1000000007ull);
  }
}

TEST_CASE("uniform(6) passes a chi-square uniformity test") {
  RandomSource rng(2024, 0, 0);
  std::vector<long> cells(6, 0);
  for (int i = 0; i < 60000; ++i) ++cells[rng.uniform(6)];
  CHECK(teststats::chi2_uniform_pvalue(cells) > 0.01);
}

TEST_CASE("coin is balanced") {
  RandomSource rng(77, 0, 0);
  const int n = 40000;
  int heads = 0;
  for (int i = 0; i < n; ++i) heads += rng.coin() ? 1 : 0;
  // 4 sigma around n/2 for a fair coin.
  CHECK(std::fabs(heads - n / 2.0) < 4.0 * std::sqrt(n / 4.0));
}

TEST_SUITE_END();
