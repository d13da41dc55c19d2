#pragma once

// Farey / Stern-Brocot combinatorics on reduced fractions in [0,1], plus the
// formal element 1/0 that labels the horoball above the two top vertices of
// the tree. All order comparisons are exact big-integer cross products.

#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "mnorm/arith.hpp"

namespace mnorm {

// A reduced non-negative fraction p/q, or the formal 1/0. The Farey-tree
// operations restrict their domains to [0,1] themselves; the type is wider
// because the T map carries [0,1] onto [0,infinity].
// The constructor rejects unreduced input; use Fraction::reduced to normalize.
class Fraction {
 public:
  Fraction(BigInt num, BigInt den) : p_(std::move(num)), q_(std::move(den)) {
    if (q_ == 0) {
      if (p_ != 1) throw std::invalid_argument("only 1/0 is admitted with zero denominator");
      return;
    }
    if (q_ < 0 || p_ < 0)
      throw std::invalid_argument("fraction must be non-negative: " + p_.get_str() + "/" + q_.get_str());
    BigInt g;
    mpz_gcd(g.get_mpz_t(), p_.get_mpz_t(), q_.get_mpz_t());
    if (g != 1) throw std::invalid_argument("fraction not reduced: " + p_.get_str() + "/" + q_.get_str());
  }
  Fraction(long num, long den) : Fraction(BigInt(num), BigInt(den)) {}

  static Fraction reduced(BigInt num, BigInt den) {
    if (den < 0) { num = -num; den = -den; }
    BigInt g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (g > 1) { num /= g; den /= g; }
    return Fraction(std::move(num), std::move(den));
  }
  static Fraction infinity() { return Fraction(BigInt(1), BigInt(0)); }
  static Fraction zero() { return Fraction(BigInt(0), BigInt(1)); }
  static Fraction one() { return Fraction(BigInt(1), BigInt(1)); }

  const BigInt& num() const { return p_; }
  const BigInt& den() const { return q_; }
  bool is_infinity() const { return q_ == 0; }
  bool is_zero() const { return q_ != 0 && p_ == 0; }
  bool is_one() const { return q_ != 0 && p_ == q_; }
  bool in_unit_interval() const { return q_ != 0 && p_ <= q_; }

  BigRat value() const {
    if (is_infinity()) throw std::domain_error("1/0 has no rational value");
    return make_rat(p_, q_);
  }

  std::string str() const { return p_.get_str() + "/" + q_.get_str(); }

  friend bool operator==(const Fraction& a, const Fraction& b) {
    return a.p_ == b.p_ && a.q_ == b.q_;
  }
  friend bool operator!=(const Fraction& a, const Fraction& b) { return !(a == b); }
  // 1/0 compares greater than every finite fraction.
  friend bool operator<(const Fraction& a, const Fraction& b) {
    if (a.is_infinity()) return false;
    if (b.is_infinity()) return true;
    return a.p_ * b.q_ < b.p_ * a.q_;
  }
  friend bool operator>(const Fraction& a, const Fraction& b) { return b < a; }
  friend bool operator<=(const Fraction& a, const Fraction& b) { return !(b < a); }
  friend bool operator>=(const Fraction& a, const Fraction& b) { return !(a < b); }

  // Total order usable as a map key (by denominator, then numerator).
  struct KeyLess {
    bool operator()(const Fraction& a, const Fraction& b) const {
      if (a.q_ != b.q_) return a.q_ < b.q_;
      return a.p_ < b.p_;
    }
  };

 private:
  BigInt p_, q_;
};

// A point (q,p) of the sector q >= p >= 0 with gcd(q,p) = 1.
struct CoprimePair {
  long long q = 1, p = 0;

  CoprimePair() = default;
  CoprimePair(long long q_, long long p_) : q(q_), p(p_) {
    if (q <= 0 || p < 0 || p > q)
      throw std::invalid_argument("pair outside the sector q >= p >= 0");
    if (std::gcd(q, p) != 1) throw std::invalid_argument("pair not coprime");
  }

  Fraction fraction() const { return Fraction(to_bigint(p), to_bigint(q)); }
  static CoprimePair from_fraction(const Fraction& f) {
    if (f.is_infinity()) throw std::invalid_argument("1/0 is not a sector pair");
    return CoprimePair(f.den().get_si(), f.num().get_si());
  }

  friend bool operator==(const CoprimePair& a, const CoprimePair& b) {
    return a.q == b.q && a.p == b.p;
  }
};

// Farey parents r1/s1 < center < r2/s2. The two boundary fractions take
// formal neighbors: parents(0/1) = (1/0, 0/1, 1/1) and
// parents(1/1) = (0/1, 1/1, 1/0).
struct FareyTriple {
  Fraction left, center, right;
};

inline FareyTriple farey_parents(const Fraction& f) {
  if (!f.in_unit_interval())
    throw std::invalid_argument("farey_parents is defined on [0,1]");
  if (f.is_zero()) return {Fraction::infinity(), f, Fraction::one()};
  if (f.is_one()) return {Fraction::zero(), f, Fraction::infinity()};
  // Left parent a/b solves b*p - a*q = 1 with 0 < b < q (extended Euclid);
  // the right parent is then the complementary (p-a)/(q-b).
  BigInt b;
  if (mpz_invert(b.get_mpz_t(), f.num().get_mpz_t(), f.den().get_mpz_t()) == 0)
    throw std::invalid_argument("fraction not reduced");
  BigInt a = (b * f.num() - 1) / f.den();
  return {Fraction(a, b), f, Fraction(f.num() - a, f.den() - b)};
}

// T(p/q) = p/(q-p); a bijection [0,1] -> [0,inf], with T(1/1) = 1/0.
inline Fraction t_map(const Fraction& f) {
  if (!f.in_unit_interval())
    throw std::invalid_argument("t_map is defined on [0,1]");
  return Fraction(f.num(), f.den() - f.num());
}

// Vector form on homology classes: T(q,p) = (q-p, p).
inline std::pair<long long, long long> t_map(const CoprimePair& v) {
  return {v.q - v.p, v.p};
}

// T^{-1}(p/q) = p/(p+q), carrying [0,1] into [0, 1/2] (and [0,inf] onto
// [0,1], with 1/0 -> 1/1).
inline Fraction t_inverse(const Fraction& f) {
  return Fraction(f.num(), f.num() + f.den());
}

// Path from the root 1/2 to f in the Farey tree restricted to (0,1);
// 'L' descends toward the smaller-side parent. 0/1 and 1/1 are not tree
// nodes (they label the two top horoballs).
inline std::string tree_path(const Fraction& f) {
  if (!f.in_unit_interval() || f.is_zero() || f.is_one())
    throw std::invalid_argument("tree_path: not an interior tree node");
  std::string path;
  BigInt lp = 0, lq = 1, rp = 1, rq = 1;  // current enclosing interval
  for (;;) {
    BigInt mp = lp + rp, mq = lq + rq;
    BigInt lhs = f.num() * mq, rhs = mp * f.den();
    if (lhs == rhs) return path;
    if (lhs < rhs) {
      path += 'L';
      rp = mp; rq = mq;
    } else {
      path += 'R';
      lp = mp; lq = mq;
    }
  }
}

}  // namespace mnorm
