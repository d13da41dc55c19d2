#pragma once

// Census of Markov-label multiplicities over the sector, bucketed by exact
// big integer. Any multiplicity above 1 would contradict the uniqueness
// conjecture and is reported loudly. Large runs stream sorted runs to disk
// instead of holding the full index in memory.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "mnorm/arith.hpp"
#include "mnorm/farey.hpp"
#include "mnorm/markov.hpp"

namespace mnorm {

inline constexpr long long kCensusStreamThreshold = 2000;

struct CensusReport {
  long long max_q = 0;
  long max_multiplicity = 0;
  std::size_t pair_count = 0;
  bool streamed = false;
  // label -> all sector pairs carrying it; only populated in-memory.
  std::map<BigInt, std::vector<CoprimePair>> label_index;
  // labels observed more than once (uniqueness-conjecture counterexamples).
  std::vector<std::pair<BigInt, std::vector<CoprimePair>>> collisions;
  // (n, (log n)^(2/3)) samples along the largest label per power-of-two q.
  std::vector<std::pair<BigInt, RealEnclosure>> petrov_curve;
};

namespace detail {

inline void enumerate_coprime(long long max_q,
                              const std::function<void(long long, long long)>& fn) {
  fn(1, 0);
  fn(1, 1);
  for (long long q = 2; q <= max_q; ++q)
    for (long long p = 1; p < q; ++p)
      if (std::gcd(q, p) == 1) fn(q, p);
}

inline void census_petrov_samples(CensusReport& rep) {
  for (long long q = 2; q <= rep.max_q; q *= 2) {
    BigInt n = markov_number(Fraction(to_bigint(q - 1), to_bigint(q)));
    RealEnclosure ln = refine_to_budget(
        [&](int wp) { return log(RealEnclosure::from_integer(n, wp)); }, 96);
    rep.petrov_curve.emplace_back(n, pow_two_thirds(ln));
  }
}

// External-merge path: labels flushed to disk in sorted runs keyed by
// (digit count, digits), then merged; only summaries are retained.
inline void census_streamed(CensusReport& rep, long long chunk_q) {
  namespace fs = std::filesystem;
  std::vector<fs::path> runs;
  fs::path dir = fs::temp_directory_path() /
                 ("mnorm-census-" + std::to_string(std::random_device{}()));
  fs::create_directories(dir);
  struct Rec {
    std::string m;
    long long q, p;
    bool operator<(const Rec& o) const {
      if (m.size() != o.m.size()) return m.size() < o.m.size();
      return m < o.m;
    }
  };
  std::vector<Rec> buf;
  auto flush = [&]() {
    if (buf.empty()) return;
    std::sort(buf.begin(), buf.end());
    fs::path run = dir / ("run" + std::to_string(runs.size()) + ".txt");
    std::ofstream out(run);
    for (const Rec& r : buf)
      out << r.m << ' ' << r.q << ' ' << r.p << '\n';
    runs.push_back(run);
    buf.clear();
  };
  for (long long q0 = 1; q0 <= rep.max_q; q0 += chunk_q) {
    long long q1 = std::min(rep.max_q, q0 + chunk_q - 1);
    // a chunk-local tree keeps memory bounded: labels at q ~ 2000 run to
    // thousands of digits, so the cache is dropped with each chunk
    MarkovTree local;
    for (long long q = q0; q <= q1; ++q) {
      auto add = [&](long long qq, long long pp) {
        BigInt m = local.label(Fraction(to_bigint(pp), to_bigint(qq)));
        buf.push_back({m.get_str(), qq, pp});
        ++rep.pair_count;
      };
      if (q == 1) { add(1, 0); add(1, 1); continue; }
      for (long long p = 1; p < q; ++p)
        if (std::gcd(q, p) == 1) add(q, p);
    }
    flush();
  }
  // k-way merge
  struct Cursor {
    std::ifstream in;
    Rec rec;
    bool ok = false;
    explicit Cursor(const fs::path& p) : in(p) { advance(); }
    void advance() {
      ok = static_cast<bool>(in >> rec.m >> rec.q >> rec.p);
    }
  };
  std::vector<std::unique_ptr<Cursor>> cursors;
  for (const auto& r : runs) cursors.push_back(std::make_unique<Cursor>(r));
  auto cmp = [](const Cursor* a, const Cursor* b) { return b->rec < a->rec; };
  std::priority_queue<Cursor*, std::vector<Cursor*>, decltype(cmp)> heap(cmp);
  for (auto& c : cursors)
    if (c->ok) heap.push(c.get());
  std::string cur_label;
  std::vector<CoprimePair> group;
  auto close_group = [&]() {
    if (group.empty()) return;
    long mult = static_cast<long>(group.size());
    rep.max_multiplicity = std::max(rep.max_multiplicity, mult);
    if (mult > 1) rep.collisions.emplace_back(BigInt(cur_label), group);
    group.clear();
  };
  while (!heap.empty()) {
    Cursor* c = heap.top();
    heap.pop();
    if (c->rec.m != cur_label) {
      close_group();
      cur_label = c->rec.m;
    }
    group.emplace_back(c->rec.q, c->rec.p);
    c->advance();
    if (c->ok) heap.push(c);
  }
  close_group();
  cursors.clear();
  std::error_code ec;
  fs::remove_all(dir, ec);
}

}  // namespace detail

inline CensusReport collision_census(long long max_q,
                                     long long stream_threshold = kCensusStreamThreshold) {
  if (max_q < 1) throw std::invalid_argument("census needs max_q >= 1");
  CensusReport rep;
  rep.max_q = max_q;
  if (max_q > stream_threshold) {
    rep.streamed = true;
    detail::census_streamed(rep, std::max<long long>(1, stream_threshold / 4));
  } else {
    detail::enumerate_coprime(max_q, [&](long long q, long long p) {
      BigInt m = markov_number(Fraction(to_bigint(p), to_bigint(q)));
      rep.label_index[m].emplace_back(q, p);
      ++rep.pair_count;
    });
    for (const auto& [m, pairs] : rep.label_index) {
      long mult = static_cast<long>(pairs.size());
      rep.max_multiplicity = std::max(rep.max_multiplicity, mult);
      if (mult > 1) rep.collisions.emplace_back(m, pairs);
    }
  }
  detail::census_petrov_samples(rep);
  return rep;
}

// |{(q,p) coprime, q >= p >= 0, q <= max_q}| by direct gcd counting; the
// census bucket total must match this.
inline std::size_t coprime_sector_count(long long max_q) {
  std::size_t n = 0;
  detail::enumerate_coprime(max_q, [&](long long, long long) { ++n; });
  return n;
}

}  // namespace mnorm
