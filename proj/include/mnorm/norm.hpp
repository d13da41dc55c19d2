#pragma once

// The stable norm on H_1 of the modular torus. On a primitive sector class
// (q,p) the norm is the geodesic length 2 acosh(3 m_{p/q} / 2); it extends
// to all integer classes by homogeneity and by the order-12 symmetry group
// of the norm ball (generated by the swap, the central symmetry, and the
// order-6 map (x,y) -> (-y, x+y), which permutes the three systoles).

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "mnorm/arith.hpp"
#include "mnorm/farey.hpp"
#include "mnorm/markov.hpp"

namespace mnorm {

inline constexpr int kNormDefaultBits = 192;

struct HomologyClass {
  long long x = 0, y = 0;
};

inline RealEnclosure stable_norm(long long q, long long p,
                                 int precision_bits = kNormDefaultBits) {
  if (q < 0 || p < 0 || p > q || q == 0)
    throw std::invalid_argument("stable_norm: point outside the sector or zero");
  long long g = std::gcd(q, p);
  BigInt m = markov_number(Fraction(to_bigint(p / g), to_bigint(q / g)));
  RealEnclosure half = enclose_acosh(make_rat(3 * m, BigInt(2)), precision_bits);
  return half.scale_exact(to_bigint(2 * g));
}

// Reduce an arbitrary nonzero class to the sector q >= p >= 0 by the
// dihedral symmetry group of the norm ball.
inline std::pair<long long, long long> sector_representative(HomologyClass v) {
  if (v.x == 0 && v.y == 0)
    throw std::invalid_argument("zero class has no direction");
  long long x = v.x, y = v.y;
  for (int s = 0; s < 2; ++s) {
    long long a = x, b = y;
    for (int r = 0; r < 6; ++r) {
      if (a >= b && b >= 0) return {a, b};
      long long na = -b, nb = a + b;  // order-6 generator
      a = na;
      b = nb;
    }
    std::swap(x, y);  // reflection generator
  }
  throw std::logic_error("dihedral reduction failed to reach the sector");
}

inline RealEnclosure extend_norm(HomologyClass v,
                                 int precision_bits = kNormDefaultBits) {
  auto [q, p] = sector_representative(v);
  return stable_norm(q, p, precision_bits);
}

// All twelve group elements as integer matrices (columns act on (x,y)).
inline std::array<std::array<long long, 4>, 12> norm_symmetries() {
  std::array<std::array<long long, 4>, 12> out;
  // R = [[0,-1],[1,1]], S = swap
  long long a = 1, b = 0, c = 0, d = 1;
  int idx = 0;
  for (int r = 0; r < 6; ++r) {
    out[idx++] = {a, b, c, d};
    out[idx++] = {c, d, a, b};  // S composed with R^r
    long long na = -c, nb = -d;
    long long nc = a + c, nd = b + d;
    a = na; b = nb; c = nc; d = nd;
  }
  return out;
}

namespace detail {

// All coprime sector pairs with q <= bound, ordered by fraction p/q, i.e.
// by the angle of the corresponding boundary direction.
inline std::vector<CoprimePair> sector_pairs_by_fraction(long long bound) {
  std::vector<CoprimePair> out;
  for (long long q = 1; q <= bound; ++q)
    for (long long p = 0; p <= q; ++p)
      if (std::gcd(q, p) == 1) out.emplace_back(q, p);
  std::sort(out.begin(), out.end(), [](const CoprimePair& a, const CoprimePair& b) {
    return static_cast<__int128>(a.p) * b.q < static_cast<__int128>(b.p) * a.q;
  });
  return out;
}

}  // namespace detail

struct SpherePoint {
  CoprimePair direction;
  RealEnclosure x, y;
};

// Boundary point of the unit ball in the direction of a primitive class:
// coordinates v / ||v||_s as enclosures.
inline SpherePoint sphere_point(const CoprimePair& v,
                                int precision_bits = kNormDefaultBits) {
  RealEnclosure n = stable_norm(v.q, v.p, precision_bits + kGuardBits);
  RealEnclosure inv = n.reciprocal();
  return {v, inv.scale_exact(to_bigint(v.q)), inv.scale_exact(to_bigint(v.p))};
}

}  // namespace mnorm
