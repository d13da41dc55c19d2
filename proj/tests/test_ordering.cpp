#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "mnorm/ordering.hpp"

using namespace mnorm;

TEST_CASE("exact Markov-order comparisons") {
  CHECK(compare_markov(1, 0, 1, 1) == Cmp3::Less);
  CHECK(compare_markov(3, 1, 3, 2) == Cmp3::Less);
  CHECK(compare_markov(2, 0, 1, 1) == Cmp3::Greater);  // 7/3 > 2
  CHECK(compare_markov(5, 2, 5, 2) == Cmp3::Equal);
}

TEST_CASE("support-plane comparator on the worked instances") {
  // s = 0 >= mu- at (2,1): concludes, and 5 < 13
  CHECK(support_plane_compare(CoprimePair(2, 1), CoprimePair(3, 1)) ==
        SupportConclusion::BasePrecedesOther);
  CHECK(compare_markov(2, 1, 3, 1) == Cmp3::Less);

  // s = -1 >= mu- at (4,3): concludes, and 169 < 194
  CHECK(support_plane_compare(CoprimePair(4, 3), CoprimePair(5, 2)) ==
        SupportConclusion::BasePrecedesOther);
  CHECK(compare_markov(4, 3, 5, 2) == Cmp3::Less);

  // s = 1 > mu+ at (2,1): inconclusive (and indeed 1 < 5)
  CHECK(support_plane_compare(CoprimePair(2, 1), CoprimePair(1, 0)) ==
        SupportConclusion::Inconclusive);

  // vertical segments: upward concludes, downward does not
  CHECK(support_plane_compare(CoprimePair(3, 1), CoprimePair(3, 2)) ==
        SupportConclusion::BasePrecedesOther);
  CHECK(support_plane_compare(CoprimePair(3, 2), CoprimePair(3, 1)) ==
        SupportConclusion::Inconclusive);

  // missing one-sided slope: (1,0) has no mu-, so the q' > q branch stalls
  CHECK(support_plane_compare(CoprimePair(1, 0), CoprimePair(5, 1)) ==
        SupportConclusion::Inconclusive);

  CHECK_THROWS_AS(support_plane_compare(CoprimePair(2, 1), CoprimePair(2, 1)),
                  std::invalid_argument);
}

TEST_CASE("support-plane conclusions never contradict the exact order (small grid)") {
  std::vector<CoprimePair> pts;
  for (long long q = 1; q <= 15; ++q)
    for (long long p = 0; p <= q; ++p)
      if (std::gcd(q, p) == 1) pts.emplace_back(q, p);
  long concluded = 0;
  for (const auto& a : pts)
    for (const auto& b : pts) {
      if (a == b) continue;
      if (support_plane_compare(a, b) == SupportConclusion::BasePrecedesOther) {
        ++concluded;
        CHECK(compare_markov(a.q, a.p, b.q, b.p) == Cmp3::Less);
      }
    }
  CHECK(concluded > 1000);  // the comparator is far from vacuous
}

TEST_CASE("scan-line: the slope -1 example and modes") {
  LatticeLine line = line_through(BigRat(-1), 4, 3);
  ScanResult all = scan_line(line, 10, ScanMode::AllSector);
  REQUIRE(all.points.size() == 4);
  CHECK(all.points[0] == std::pair<long long, long long>{4, 3});
  CHECK(all.points[3] == std::pair<long long, long long>{7, 0});
  CHECK(all.distances[0] == 169);
  CHECK(all.distances[1] == 194);
  CHECK(all.distances[2] == 233);
  CHECK(all.distances[3] == 281);
  CHECK(all.classification == ScanClass::Increasing);

  ScanResult cop = scan_line(line, 10, ScanMode::CoprimeOnly);
  CHECK(cop.points.size() == 3);  // (7,0) is not primitive
  CHECK(cop.classification == ScanClass::Increasing);

  // a line missing the sector entirely
  ScanResult far = scan_line(LatticeLine{1, 1, 1, 1}, 1, ScanMode::AllSector);
  CHECK(far.points.size() == 1);
  CHECK(far.classification == ScanClass::Trivial);
}

TEST_CASE("classifier shapes: antimodal, other, ties") {
  auto classify = [](std::vector<long> vals) {
    ScanResult r;
    for (long v : vals) {
      r.points.emplace_back(1, 0);
      r.distances.emplace_back(v);
    }
    detail::classify_scan(r);
    return r;
  };
  CHECK(classify({5, 3, 2, 4, 9}).classification == ScanClass::StrictlyAntimodal);
  CHECK(classify({5, 3, 2, 4, 9}).antimodal_index == 3);
  CHECK(classify({1, 2, 3}).classification == ScanClass::Increasing);
  CHECK(classify({3, 2, 1}).classification == ScanClass::Decreasing);
  CHECK(classify({3, 2, 2, 5}).classification == ScanClass::Other);
  CHECK(classify({3, 2, 2, 5}).ties.size() == 1);
  CHECK(classify({1, 3, 2, 4}).classification == ScanClass::Other);
  CHECK(classify({7}).classification == ScanClass::Trivial);
  CHECK(classify({}).classification == ScanClass::Trivial);
}

TEST_CASE("antimodal witness search inside the critical slope window") {
  auto w76 = find_antimodal(BigRat(-7, 6), 1, 20);
  REQUIRE(!w76.empty());
  CHECK(w76.front().line.q0 == 17);
  CHECK(w76.front().scan.classification == ScanClass::StrictlyAntimodal);
  long j = w76.front().scan.antimodal_index;
  CHECK(j >= 2);
  CHECK(j <= static_cast<long>(w76.front().scan.points.size()) - 1);

  auto w65 = find_antimodal(BigRat(-6, 5), 1, 20);
  REQUIRE(!w65.empty());
  CHECK(w65.front().line.q0 == 14);

  // slopes in the monotone regimes are rejected
  CHECK_THROWS_AS(find_antimodal(BigRat(-1), 1, 10), std::invalid_argument);
  CHECK_THROWS_AS(find_antimodal(BigRat(-5, 4), 1, 10), std::invalid_argument);
  CHECK_THROWS_AS(find_antimodal(BigRat(-9, 8), 1, 10), std::invalid_argument);
}

TEST_CASE("unimodality dichotomy: full-sector scans are never Other") {
  // strict convexity forces every non-trivial scan into one of the three
  // monotone/antimodal shapes
  for (const char* s : {"-1", "-5/4", "-8/7", "-7/6", "-6/5", "-2", "0"}) {
    BigRat slope(s);
    auto [u, v] = slope_direction(slope);
    long long x0 = 0, y0 = 0;
    for (long long x = -200; x <= 200 && (x0 == 0 && y0 == 0); ++x) {
      if (v != 0 && (1 - u * x) % v == 0) { x0 = x; y0 = (1 - u * x) / v; }
    }
    REQUIRE(u * x0 + v * y0 == 1);
    long long corners[4] = {u, u * 150, (u + v), (u + v) * 150};
    long long cmin = *std::min_element(corners, corners + 4);
    long long cmax = *std::max_element(corners, corners + 4);
    for (long long c = cmin; c <= cmax; ++c) {
      ScanResult r = scan_line({u, v, x0 * c, y0 * c}, 150, ScanMode::AllSector);
      CHECK(r.classification != ScanClass::Other);
      CHECK(r.ties.empty());
    }
  }
}

TEST_CASE("monotone regimes verify exhaustively at a small bound") {
  MonotoneReport inc = verify_monotone_regime(BigRat(-1), 80);
  CHECK(inc.pass);
  CHECK(inc.expected == ScanClass::Increasing);
  CHECK(inc.nontrivial_lines > 0);

  MonotoneReport dec = verify_monotone_regime(BigRat(-5, 4), 80);
  CHECK(dec.pass);
  CHECK(dec.expected == ScanClass::Decreasing);

  MonotoneReport pos = verify_monotone_regime(BigRat(1, 2), 40);
  CHECK(pos.pass);
  CHECK(pos.expected == ScanClass::Increasing);

  CHECK_THROWS_AS(verify_monotone_regime(BigRat(-6, 5), 40), std::invalid_argument);
}
