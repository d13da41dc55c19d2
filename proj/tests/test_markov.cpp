#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <thread>

#include "mnorm/markov.hpp"

using namespace mnorm;

namespace {
Fraction frac(long p, long q) { return Fraction(BigInt(p), BigInt(q)); }
}

TEST_CASE("tree regression: the labelled-tree values") {
  CHECK(markov_number(Fraction::zero()) == 1);
  CHECK(markov_number(Fraction::infinity()) == 1);
  CHECK(markov_number(Fraction::one()) == 2);
  CHECK(markov_number(frac(1, 2)) == 5);
  CHECK(markov_number(frac(1, 3)) == 13);
  CHECK(markov_number(frac(2, 3)) == 29);
  CHECK(markov_number(frac(2, 5)) == 194);
  CHECK(markov_number(frac(3, 5)) == 433);
  CHECK(markov_number(frac(1, 4)) == 34);
  CHECK(markov_number(frac(3, 4)) == 169);
}

TEST_CASE("every parent/label/parent triple satisfies the Markov cubic") {
  MarkovTree tree;
  for (long q = 2; q <= 500; ++q)
    for (long p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      Fraction f = frac(p, q);
      FareyTriple t = farey_parents(f);
      BigInt x = tree.label(t.left), y = tree.label(f), z = tree.label(t.right);
      CHECK(x * x + y * y + z * z == 3 * x * y * z);
    }
}

TEST_CASE("trace words: seeds, products, determinant, oracle agreement") {
  CHECK(cohn_trace(Fraction::zero()) == 3);
  CHECK(cohn_trace(frac(1, 2)) == 15);
  Mat2 w12 = cohn_word(frac(1, 2));
  CHECK(w12.a == 7);
  CHECK(w12.b == 5);
  CHECK(w12.c == 11);
  CHECK(w12.d == 8);
  CHECK(cohn_trace(frac(2, 3)) == 87);

  for (long q = 1; q <= 60; ++q)
    for (long p = 0; p <= q; ++p) {
      if (std::gcd(p, q) != 1 || (q > 1 && (p == 0 || p == q))) continue;
      Fraction f = frac(p, q);
      CHECK(cohn_word(f).det() == 1);
      CHECK(cohn_trace(f) == 3 * markov_number(f));
    }
}

TEST_CASE("markov distance: primitive, scaled, and recurrence identities") {
  CHECK(markov_distance(1, 0) == 1);
  CHECK(markov_distance(2, 0) == BigRat(7, 3));
  CHECK(markov_distance(2, 2) == BigRat(34, 3));
  CHECK(markov_distance(5, 2) == 194);
  CHECK_THROWS_AS(markov_distance(0, 0), std::invalid_argument);

  // c-recurrence holds exactly for scaled pairs: c_g = 3 m_{gq,gp}
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    long q = 1 + static_cast<long>(rng() % 20);
    long p = static_cast<long>(rng() % (q + 1));
    if (std::gcd(q, p) != 1) continue;
    BigInt m0(markov_distance(q, p).get_num());
    BigInt prev = 2, cur = 3 * m0;
    for (long g = 2; g <= 6; ++g) {
      BigInt next = 3 * m0 * cur - prev;
      prev = cur;
      cur = next;
      CHECK(markov_distance(g * q, g * p) == make_rat(cur, BigInt(3)));
    }
  }
}

TEST_CASE("markov distance agrees with the cosh expression as an enclosure") {
  std::mt19937_64 rng(20210728);
  for (int i = 0; i < 200; ++i) {
    long q = 1 + static_cast<long>(rng() % 40);
    long p = static_cast<long>(rng() % (q + 1));
    long g = 1 + static_cast<long>(rng() % 5);
    if (std::gcd(q, p) != 1) continue;
    BigRat dist = markov_distance(g * q, g * p);
    BigInt m0 = markov_number(frac(p, q));
    RealEnclosure viacosh = refine_to_budget(
        [&](int wp) {
          RealEnclosure ell =
              acosh(RealEnclosure::from_rational(make_rat(3 * m0, BigInt(2)), wp));
          return cosh(ell.scale_exact(to_bigint(g))) *
                 RealEnclosure::from_rational(BigRat(2, 3), wp);
        },
        128);
    CHECK(viacosh.contains(dist));
  }
}

TEST_CASE("triple_at matches the worked boundary examples") {
  auto t0 = markov_triple_at(Fraction::zero());
  CHECK(t0[0] == 1);
  CHECK(t0[1] == 1);
  CHECK(t0[2] == 1);
  auto t12 = markov_triple_at(frac(1, 2));
  CHECK(t12[0] == 1);
  CHECK(t12[1] == 2);
  CHECK(t12[2] == 1);
  auto t13 = markov_triple_at(frac(1, 3));
  CHECK(t13[0] == 1);
  CHECK(t13[1] == 5);
  CHECK(t13[2] == 2);
  CHECK_THROWS_AS(markov_triple_at(frac(2, 3)), std::invalid_argument);
}

TEST_CASE("snapshot round trip and cubic validation on load") {
  namespace fs = std::filesystem;
  fs::path path = fs::temp_directory_path() / "mnorm-test-snapshot.tsv";

  MarkovTree tree;
  for (long q = 2; q <= 40; ++q)
    for (long p = 1; p < q; ++p)
      if (std::gcd(p, q) == 1) tree.label(frac(p, q));
  tree.save_snapshot(path.string());

  MarkovTree fresh;
  fresh.load_snapshot(path.string());
  CHECK(fresh.size() == tree.size());
  CHECK(fresh.label(frac(7, 40)) == tree.label(frac(7, 40)));

  // corrupt the label on the 100th line (the first entry the 1% cubic
  // sample validates): the load must reject the file
  std::ifstream in(path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  in.close();
  REQUIRE(lines.size() >= 100);
  std::string& target = lines[99];
  auto tab = target.find('\t');
  target[tab + 1] = target[tab + 1] == '9' ? '8' : '9';
  std::ofstream out(path);
  for (const auto& line : lines) out << line << '\n';
  out.close();
  MarkovTree corrupted;
  bool rejected = false;
  try {
    corrupted.load_snapshot(path.string());
  } catch (const std::runtime_error&) {
    rejected = true;
  }
  CHECK(rejected);
  fs::remove(path);
}

TEST_CASE("concurrent label queries against a shared tree") {
  MarkovTree tree;
  std::vector<std::thread> workers;
  std::atomic<bool> ok{true};
  for (int t = 0; t < 4; ++t) {
    workers.emplace_back([&, t] {
      for (long q = 2 + t; q <= 120; q += 4)
        for (long p = 1; p < q; ++p) {
          if (std::gcd(p, q) != 1) continue;
          if (tree.label(frac(p, q)) <= 0) ok = false;
        }
    });
  }
  for (auto& w : workers) w.join();
  CHECK(ok.load());
  CHECK(tree.label(frac(1, 2)) == 5);
}
