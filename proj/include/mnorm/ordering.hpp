#pragma once

// The Markov ordering on sector points: exact comparisons, the support-plane
// comparator, the lattice-line scanner with its monotonicity classifier, and
// the antimodal witness search.

#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mnorm/arith.hpp"
#include "mnorm/farey.hpp"
#include "mnorm/fock.hpp"
#include "mnorm/markov.hpp"

namespace mnorm {

enum class Cmp3 { Less, Equal, Greater };

// Exact comparison of Markov distances; Less means a precedes b in the
// Markov ordering. No floating point is involved.
inline Cmp3 compare_markov(long long q, long long p, long long q2, long long p2) {
  BigRat a = markov_distance(q, p), b = markov_distance(q2, p2);
  int c = cmp(a, b);
  return c < 0 ? Cmp3::Less : c > 0 ? Cmp3::Greater : Cmp3::Equal;
}

enum class SupportConclusion { BasePrecedesOther, Inconclusive };

// Support-plane comparator: if the segment from base to other leaves the
// norm ball through a support line at the corner base/||base||, then base
// strictly precedes other. Concretely, with s = (p'-p)/(q'-q):
//   q' < q and s <= mu+   concludes,
//   q' > q and s >= mu-   concludes,
//   q' = q and p' > p     concludes (the upward direction exits every
//                         support line at the corner).
// Everything else is Inconclusive. Comparisons against mu are certified;
// an absent one-sided slope or an undecided comparison yields Inconclusive.
inline SupportConclusion support_plane_compare(const CoprimePair& base,
                                               const CoprimePair& other,
                                               int start_bits = kCompareStartBits) {
  if (base == other) throw std::invalid_argument("support_plane_compare: equal points");
  long long dq = other.q - base.q, dp = other.p - base.p;
  if (dq == 0)
    return dp > 0 ? SupportConclusion::BasePrecedesOther
                  : SupportConclusion::Inconclusive;
  Side side = dq < 0 ? Side::Right : Side::Left;  // mu+ needs R, mu- needs L
  if (side == Side::Right && base.p == base.q) return SupportConclusion::Inconclusive;
  if (side == Side::Left && base.p == 0) return SupportConclusion::Inconclusive;
  BigRat s = make_rat(to_bigint(dp), to_bigint(dq));
  LazyReal mu = [base, side](int wp) {
    return detail::corner_mu_eval(base, side, wp);
  };
  Order ord = certified_compare(lazy_rational(s), mu, start_bits);
  if (dq < 0 && ord == Order::Less) return SupportConclusion::BasePrecedesOther;
  if (dq > 0 && ord == Order::Greater) return SupportConclusion::BasePrecedesOther;
  return SupportConclusion::Inconclusive;
}

// A lattice line of slope -u/v (as dp/dq) through (q0, p0); direction
// (v, -u) with v >= 1 and gcd(u, v) = 1.
struct LatticeLine {
  long long u = 0, v = 1;
  long long q0 = 1, p0 = 0;
};

inline std::pair<long long, long long> slope_direction(const BigRat& slope) {
  BigInt num = slope.get_num(), den = slope.get_den();
  long long u = -num.get_si(), v = den.get_si();  // slope = -u/v
  if (v < 1) throw std::invalid_argument("slope denominator must be positive");
  return {u, v};
}

inline LatticeLine line_through(const BigRat& slope, long long q0, long long p0) {
  auto [u, v] = slope_direction(slope);
  return {u, v, q0, p0};
}

enum class ScanClass { Trivial, Increasing, Decreasing, StrictlyAntimodal, Other };
enum class ScanMode { AllSector, CoprimeOnly };

inline const char* to_string(ScanClass c) {
  switch (c) {
    case ScanClass::Trivial: return "Trivial";
    case ScanClass::Increasing: return "Increasing";
    case ScanClass::Decreasing: return "Decreasing";
    case ScanClass::StrictlyAntimodal: return "StrictlyAntimodal";
    case ScanClass::Other: return "Other";
  }
  return "?";
}

struct ScanResult {
  std::vector<std::pair<long long, long long>> points;  // ordered by q
  std::vector<BigRat> distances;
  ScanClass classification = ScanClass::Trivial;
  long antimodal_index = -1;        // 1-based position of the minimum
  std::vector<std::size_t> ties;    // adjacent equal distances (expected none)
  ScanMode mode = ScanMode::AllSector;
};

namespace detail {

inline void classify_scan(ScanResult& r) {
  const auto& d = r.distances;
  const std::size_t n = d.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (d[i] == d[i + 1]) r.ties.push_back(i);
  if (n <= 1) {
    r.classification = ScanClass::Trivial;
    return;
  }
  if (!r.ties.empty()) {
    r.classification = ScanClass::Other;
    return;
  }
  std::size_t i = 0;
  while (i + 1 < n && d[i + 1] < d[i]) ++i;
  std::size_t k = i;
  while (k + 1 < n && d[k + 1] > d[k]) ++k;
  if (k != n - 1) {
    r.classification = ScanClass::Other;  // a second descent: not unimodal
  } else if (i == 0) {
    r.classification = ScanClass::Increasing;
  } else if (i == n - 1) {
    r.classification = ScanClass::Decreasing;
  } else {
    r.classification = ScanClass::StrictlyAntimodal;
    r.antimodal_index = static_cast<long>(i) + 1;
  }
}

}  // namespace detail

// Enumerate the line's sector points with q <= q_bound (coprime only when
// requested), attach exact Markov distances, and classify the sequence.
inline ScanResult scan_line(const LatticeLine& line, long long q_bound,
                            ScanMode mode) {
  if (line.v < 1 || std::gcd(std::abs(line.u), line.v) != 1)
    throw std::invalid_argument("line direction must be primitive with v >= 1");
  if (q_bound < 1) throw std::invalid_argument("q_bound must be >= 1");
  ScanResult r;
  r.mode = mode;
  // q(k) = q0 + k v increases with k.
  long long kmin = -((line.q0 - 1) / line.v);
  while (line.q0 + kmin * line.v < 1) ++kmin;
  for (long long k = kmin; line.q0 + k * line.v <= q_bound; ++k) {
    long long q = line.q0 + k * line.v;
    long long p = line.p0 - k * line.u;
    if (p < 0 || p > q) continue;
    if (q == 0) continue;
    if (mode == ScanMode::CoprimeOnly && std::gcd(q, p) != 1) continue;
    r.points.emplace_back(q, p);
    r.distances.push_back(markov_distance(q, p));
  }
  detail::classify_scan(r);
  return r;
}

struct AntimodalWitness {
  LatticeLine line;
  ScanResult scan;
};

// Scan base points (k, k-1) for k in [k_start, k_max] along lines of slope
// -u/v with sigma- < -u/v < sigma+ (certified), collecting every line whose
// coprime-only scan is strictly antimodal.
inline std::vector<AntimodalWitness> find_antimodal(const BigRat& slope,
                                                    long long k_start,
                                                    long long k_max) {
  auto [u, v] = slope_direction(slope);
  Order lo = certified_compare(lazy_rational(slope), sigma_minus_lazy());
  Order hi = certified_compare(lazy_rational(slope), sigma_plus_lazy());
  if (lo == Order::UndecidedAtCap || hi == Order::UndecidedAtCap)
    throw PrecisionCapError("cannot certify slope against sigma bounds");
  if (lo != Order::Greater || hi != Order::Less)
    throw std::invalid_argument("slope outside (sigma-, sigma+): monotone regime");
  if (k_start < 1 || k_max < k_start)
    throw std::invalid_argument("need 1 <= k_start <= k_max");
  std::vector<AntimodalWitness> out;
  for (long long k = k_start; k <= k_max; ++k) {
    LatticeLine line{u, v, k, k - 1};
    long long bound = k + v * ((k - 1) / u + 1);  // p drops below 0 past this q
    ScanResult scan = scan_line(line, bound, ScanMode::CoprimeOnly);
    if (scan.classification == ScanClass::StrictlyAntimodal)
      out.push_back({line, std::move(scan)});
  }
  return out;
}

struct MonotoneReport {
  BigRat slope;
  long long q_bound = 0;
  ScanClass expected = ScanClass::Increasing;
  long long lines_scanned = 0;
  long long nontrivial_lines = 0;
  long long points_seen = 0;
  std::vector<std::pair<long long, ScanClass>> violations;  // (line offset c, class)
  bool pass = false;
};

// Exhaustively scan every lattice line of the given slope that meets the
// sector within q_bound (coprime-only), checking the regime promised for
// slopes outside [sigma-, sigma+].
inline MonotoneReport verify_monotone_regime(const BigRat& slope,
                                             long long q_bound) {
  auto [u, v] = slope_direction(slope);
  Order lo = certified_compare(lazy_rational(slope), sigma_minus_lazy());
  Order hi = certified_compare(lazy_rational(slope), sigma_plus_lazy());
  if (lo == Order::UndecidedAtCap || hi == Order::UndecidedAtCap)
    throw PrecisionCapError("cannot certify slope against sigma bounds");
  if (lo != Order::Less && hi != Order::Greater)
    throw std::invalid_argument("slope inside [sigma-, sigma+]: no monotone regime");
  MonotoneReport rep;
  rep.slope = slope;
  rep.q_bound = q_bound;
  rep.expected = (lo == Order::Less) ? ScanClass::Decreasing : ScanClass::Increasing;
  // Lines of slope -u/v are the level sets u q + v p = c; find a base point
  // on each via the extended Euclid identity u x + v y = 1.
  long long x0 = 0, y0 = 0;
  {
    long long a = u, b = v, x = 1, xl = 0, y = 0, yl = 1;
    while (b != 0) {
      long long t = a / b;
      a -= t * b; std::swap(a, b);
      x -= t * xl; std::swap(x, xl);
      y -= t * yl; std::swap(y, yl);
    }
    // now a = gcd = +-1
    if (a == -1) { x = -x; y = -y; }
    x0 = x; y0 = y;
  }
  long long corners[4] = {u * 1 + v * 0, u * q_bound + v * 0,
                          (u + v) * 1, (u + v) * q_bound};
  long long cmin = *std::min_element(corners, corners + 4);
  long long cmax = *std::max_element(corners, corners + 4);
  for (long long c = cmin; c <= cmax; ++c) {
    LatticeLine line{u, v, x0 * c, y0 * c};
    ScanResult scan = scan_line(line, q_bound, ScanMode::CoprimeOnly);
    ++rep.lines_scanned;
    rep.points_seen += static_cast<long long>(scan.points.size());
    if (scan.classification == ScanClass::Trivial) continue;
    ++rep.nontrivial_lines;
    if (scan.classification != rep.expected)
      rep.violations.emplace_back(c, scan.classification);
  }
  rep.pass = rep.violations.empty();
  return rep;
}

}  // namespace mnorm
