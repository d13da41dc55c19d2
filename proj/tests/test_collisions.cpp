#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mnorm/collisions.hpp"

using namespace mnorm;

TEST_CASE("census at q = 1 and q = 5") {
  CensusReport r1 = collision_census(1);
  CHECK(r1.pair_count == 2);
  CHECK(r1.max_multiplicity == 1);
  CHECK(r1.label_index.at(BigInt(1)).size() == 1);
  CHECK(r1.label_index.at(BigInt(2)).size() == 1);
  CHECK(r1.collisions.empty());

  CensusReport r5 = collision_census(5);
  CHECK(r5.pair_count == 11);  // Farey fractions with q <= 5
  CHECK(r5.max_multiplicity == 1);
  CHECK(r5.label_index.size() == 11);
}

TEST_CASE("bucket completeness equals direct coprime enumeration") {
  CensusReport r = collision_census(60);
  CHECK(r.pair_count == coprime_sector_count(60));
  std::size_t total = 0;
  for (const auto& [label, pairs] : r.label_index) total += pairs.size();
  CHECK(total == r.pair_count);
}

TEST_CASE("streamed census agrees with the in-memory census") {
  CensusReport mem = collision_census(60, /*stream_threshold=*/1000);
  CensusReport str = collision_census(60, /*stream_threshold=*/10);
  CHECK(!mem.streamed);
  CHECK(str.streamed);
  CHECK(str.pair_count == mem.pair_count);
  CHECK(str.max_multiplicity == mem.max_multiplicity);
  CHECK(str.collisions.size() == mem.collisions.size());
  CHECK(str.label_index.empty());  // summaries only in streamed mode
}

TEST_CASE("multiplicities sit below the asymptotic shape bound") {
  CensusReport r = collision_census(80);
  for (const auto& [label, pairs] : r.label_index) {
    long mult = static_cast<long>(pairs.size());
    if (label <= 2) {
      CHECK(mult == 1);  // (log n)^(2/3) degenerates at the smallest labels
      continue;
    }
    RealEnclosure bound = refine_to_budget(
        [&](int wp) {
          return pow_two_thirds(log(RealEnclosure::from_integer(label, wp)));
        },
        64);
    // mult <= ceil(bound): certified via mult - 1 < bound
    CHECK(mpfr_cmp_si(bound.hi(), mult - 1) > 0);
  }
}

TEST_CASE("petrov samples are recorded with positive enclosures") {
  CensusReport r = collision_census(40);
  CHECK(!r.petrov_curve.empty());
  for (const auto& [n, b] : r.petrov_curve) {
    CHECK(n >= 2);
    CHECK(b.strictly_positive());
  }
}
