#pragma once

// The Markov labelling of the Farey tree, an independent trace-word oracle,
// and the Markov distance extension to non-primitive sector pairs.
//
// Labels: m(0/1) = m(1/0) = 1, m(1/1) = 2. For an interior fraction f with
// Farey parents a/b and c/d, the label is the triple mutation
//     m(f) = 3 m(a/b) m(c/d) - m(g),
// where g = (c-a)/(d-b) is the far vertex of the Farey triangle being
// mutated. Each (m(a/b), m(f), m(c/d)) is then a Markov triple.

#include <array>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "mnorm/arith.hpp"
#include "mnorm/farey.hpp"

namespace mnorm {

namespace detail {
inline Fraction far_parent(const FareyTriple& t) {
  return Fraction::reduced(t.right.num() - t.left.num(),
                           t.right.den() - t.left.den());
}
}  // namespace detail

// Memoized labelling. Lookups take a shared lock, inserts an exclusive one,
// so concurrent evaluation over a common cache is safe.
class MarkovTree {
 public:
  BigInt label(const Fraction& f) const {
    if (f.is_infinity() || f.is_zero()) return BigInt(1);
    if (f.is_one()) return BigInt(2);
    if (!f.in_unit_interval())
      throw std::invalid_argument("Markov labels live on [0,1] and 1/0");
    {
      std::shared_lock lk(mu_);
      auto it = cache_.find(f);
      if (it != cache_.end()) return it->second;
    }
    compute(f);
    std::shared_lock lk(mu_);
    return cache_.at(f);
  }

  // Markov distance m_{q,p} for any sector pair: with g = gcd(q,p) and
  // m0 the label of the primitive part, the Chebyshev-style recurrence
  // c0 = 2, c1 = 3 m0, c_{k+1} = 3 m0 c_k - c_{k-1} gives m_{q,p} = c_g / 3.
  BigRat distance(long long q, long long p) const {
    if (q < 0 || p < 0 || p > q || q == 0)
      throw std::invalid_argument("markov distance needs a nonzero sector point");
    long long g = std::gcd(q, p);
    BigInt m0 = label(Fraction(to_bigint(p / g), to_bigint(q / g)));
    if (g == 1) return BigRat(m0);
    BigInt t = 3 * m0, prev = 2, cur = t;
    for (long long k = 2; k <= g; ++k) {
      BigInt next = t * cur - prev;
      prev = std::move(cur);
      cur = std::move(next);
    }
    return make_rat(cur, BigInt(3));
  }

  // (n1, n, n2) = labels of T(r1/s1), T(f), T(r2/s2) for f in [0, 1/2].
  // The formal parent 1/0 (at f = 0/1) carries label 1.
  std::array<BigInt, 3> triple_at(const Fraction& f) const {
    if (f.is_infinity() || 2 * f.num() > f.den())
      throw std::invalid_argument("triple_at: fraction outside [0, 1/2]");
    FareyTriple t = farey_parents(f);
    auto lab = [&](const Fraction& fr) {
      return fr.is_infinity() ? BigInt(1) : label(t_map(fr));
    };
    return {lab(t.left), lab(t.center), lab(t.right)};
  }

  std::size_t size() const {
    std::shared_lock lk(mu_);
    return cache_.size();
  }

  // Snapshot format: one record per line, `p/q <tab> m` in decimal.
  void save_snapshot(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write snapshot: " + path);
    std::shared_lock lk(mu_);
    for (const auto& [f, m] : cache_) out << f.str() << '\t' << m.get_str() << '\n';
  }

  // Loads a snapshot, validating the Markov cubic on a 1% sample (every
  // entry whose parents are also present is eligible).
  void load_snapshot(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read snapshot: " + path);
    std::map<Fraction, BigInt, Fraction::KeyLess> loaded;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      auto slash = line.find('/');
      auto tab = line.find('\t');
      if (slash == std::string::npos || tab == std::string::npos || slash > tab)
        throw std::runtime_error("snapshot parse error at line " + std::to_string(lineno));
      BigInt p(line.substr(0, slash)), q(line.substr(slash + 1, tab - slash - 1)),
          m(line.substr(tab + 1));
      loaded.emplace(Fraction(p, q), std::move(m));
    }
    auto lookup = [&](const Fraction& f) -> const BigInt* {
      static const BigInt one(1), two(2);
      if (f.is_infinity() || f.is_zero()) return &one;
      if (f.is_one()) return &two;
      auto it = loaded.find(f);
      return it == loaded.end() ? nullptr : &it->second;
    };
    long idx = 0;
    for (const auto& [f, m] : loaded) {
      if (f.is_zero() || f.is_one()) {
        if (m != *lookup(f)) throw std::runtime_error("snapshot base label mismatch at " + f.str());
        continue;
      }
      if (++idx % 100 != 0) continue;  // 1% sample
      FareyTriple t = farey_parents(f);
      const BigInt* x = lookup(t.left);
      const BigInt* y = lookup(t.right);
      if (!x || !y) continue;
      if ((*x) * (*x) + m * m + (*y) * (*y) != 3 * (*x) * m * (*y))
        throw std::runtime_error("snapshot fails the Markov cubic at " + f.str());
    }
    std::unique_lock lk(mu_);
    for (auto& [f, m] : loaded)
      if (!f.is_zero() && !f.is_one()) cache_.insert_or_assign(f, std::move(m));
  }

 private:
  void compute(const Fraction& target) const {
    // Iterative worklist; parents always have smaller denominators, so the
    // dependency chain terminates at the base fractions.
    std::vector<Fraction> stack{target};
    std::unique_lock lk(mu_);
    auto known = [&](const Fraction& f) -> const BigInt* {
      static const BigInt one(1), two(2);
      if (f.is_infinity() || f.is_zero()) return &one;
      if (f.is_one()) return &two;
      auto it = cache_.find(f);
      return it == cache_.end() ? nullptr : &it->second;
    };
    while (!stack.empty()) {
      Fraction f = stack.back();
      if (known(f)) {
        stack.pop_back();
        continue;
      }
      FareyTriple t = farey_parents(f);
      Fraction g = detail::far_parent(t);
      const BigInt* ml = known(t.left);
      const BigInt* mr = known(t.right);
      const BigInt* mg = known(g);
      if (ml && mr && mg) {
        cache_.emplace(f, 3 * (*ml) * (*mr) - (*mg));
        stack.pop_back();
      } else {
        if (!ml) stack.push_back(t.left);
        if (!mr) stack.push_back(t.right);
        if (!mg) stack.push_back(g);
      }
    }
  }

  mutable std::map<Fraction, BigInt, Fraction::KeyLess> cache_;
  mutable std::shared_mutex mu_;
};

inline MarkovTree& markov_tree() {
  static MarkovTree tree;
  return tree;
}

inline BigInt markov_number(const Fraction& f) { return markov_tree().label(f); }

inline BigRat markov_distance(long long q, long long p) {
  return markov_tree().distance(q, p);
}

inline std::array<BigInt, 3> markov_triple_at(const Fraction& f) {
  return markov_tree().triple_at(f);
}

// ---- trace-word oracle ----

// 2x2 unimodular words: W(0/1) and W(1/1) are fixed seed matrices with
// tr W = 3 and 6; the word at a mediant is the product of the parents'
// words. tr W(f) must equal 3 * markov_number(f) for every reduced f.
struct Mat2 {
  BigInt a, b, c, d;
  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  BigInt trace() const { return a + d; }
  BigInt det() const { return a * d - b * c; }
};

class CohnWords {
 public:
  Mat2 word(const Fraction& f) const {
    if (!f.in_unit_interval())
      throw std::invalid_argument("trace words live on [0,1]");
    if (f.is_zero()) return kSeed0;
    if (f.is_one()) return kSeed1;
    {
      std::shared_lock lk(mu_);
      auto it = cache_.find(f);
      if (it != cache_.end()) return it->second;
    }
    compute(f);
    std::shared_lock lk(mu_);
    return cache_.at(f);
  }

 private:
  void compute(const Fraction& target) const {
    std::vector<Fraction> stack{target};
    std::unique_lock lk(mu_);
    auto known = [&](const Fraction& f) -> const Mat2* {
      if (f.is_zero()) return &kSeed0;
      if (f.is_one()) return &kSeed1;
      auto it = cache_.find(f);
      return it == cache_.end() ? nullptr : &it->second;
    };
    while (!stack.empty()) {
      Fraction f = stack.back();
      if (known(f)) {
        stack.pop_back();
        continue;
      }
      FareyTriple t = farey_parents(f);
      const Mat2* wl = known(t.left);
      const Mat2* wr = known(t.right);
      if (wl && wr) {
        cache_.emplace(f, (*wl) * (*wr));
        stack.pop_back();
      } else {
        if (!wl) stack.push_back(t.left);
        if (!wr) stack.push_back(t.right);
      }
    }
  }

  static inline const Mat2 kSeed0{1, 1, 1, 2};
  static inline const Mat2 kSeed1{3, 2, 4, 3};
  mutable std::map<Fraction, Mat2, Fraction::KeyLess> cache_;
  mutable std::shared_mutex mu_;
};

inline CohnWords& cohn_words() {
  static CohnWords words;
  return words;
}

inline Mat2 cohn_word(const Fraction& f) { return cohn_words().word(f); }

inline BigInt cohn_trace(const Fraction& f) { return cohn_word(f).trace(); }

}  // namespace mnorm
