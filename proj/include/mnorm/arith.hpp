#pragma once

// Exact big-integer/rational arithmetic and certified real enclosures.
//
// Every real quantity in this library is represented by a RealEnclosure: a
// pair of directed-rounded MPFR bounds [lo, hi] that is guaranteed to contain
// the exact value. Values that are known to be rational additionally carry
// their exact mpq form, which is what allows certified_compare to answer
// `Equal` without symbolic algebra. Comparisons between transcendental
// quantities are decided by re-evaluating both sides at doubled precision
// until the enclosures separate, up to a hard cap.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace mnorm {

using BigInt = mpz_class;
using BigRat = mpq_class;

// Precision schedule: comparisons start here and double until they resolve.
inline constexpr int kCompareStartBits = 128;
// Hard cap; reaching it yields UndecidedAtCap rather than non-termination.
inline constexpr int kPrecisionCapBits = 16384;
// Guard bits added on top of a requested target precision when evaluating.
inline constexpr int kGuardBits = 32;

inline BigRat make_rat(BigInt num, BigInt den) {
  BigRat r(std::move(num), std::move(den));
  r.canonicalize();
  return r;
}

// gmpxx has no long long constructor; long is 64-bit on every platform we
// target, so the cast is lossless.
inline BigInt to_bigint(long long x) {
  static_assert(sizeof(long) == sizeof(long long));
  return BigInt(static_cast<long>(x));
}

// Thrown when an interval is too wide to certify a domain condition
// (log of an interval touching 0, division by an interval straddling 0).
// Re-evaluating the whole expression at higher precision normally cures it.
struct PrecisionLossError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when refinement reaches kPrecisionCapBits without meeting its goal.
struct PrecisionCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

// Minimal RAII value wrapper over mpfr_t.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  Mpfr(const Mpfr& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);  // same precision: exact
  }
  Mpfr(Mpfr&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  Mpfr& operator=(const Mpfr& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Mpfr& operator=(Mpfr&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Mpfr() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

 private:
  mpfr_t v_;
};

inline int digits_for_roundtrip(mpfr_prec_t prec) {
  return static_cast<int>(mpfr_get_str_ndigits(10, prec));
}

// Decimal string that re-parses (round-to-nearest, same precision) to the
// exact same binary value.
inline std::string to_decimal_string(mpfr_srcptr x) {
  if (mpfr_zero_p(x)) return "0";
  char* s = nullptr;
  int n = digits_for_roundtrip(mpfr_get_prec(x));
  if (mpfr_asprintf(&s, "%.*Re", n - 1, x) < 0)
    throw std::runtime_error("mpfr_asprintf failed");
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

}  // namespace detail

enum class Order { Less, Greater, Equal, UndecidedAtCap };

class RealEnclosure {
 public:
  // Zero-point enclosure of an exact rational, bounds rounded outward at
  // `work_bits`. Dyadic rationals collapse to zero width.
  static RealEnclosure from_rational(const BigRat& x, int work_bits) {
    RealEnclosure e(work_bits);
    mpfr_set_q(e.lo_.get(), x.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(e.hi_.get(), x.get_mpq_t(), MPFR_RNDU);
    e.exact_ = x;
    return e;
  }
  static RealEnclosure from_integer(const BigInt& n, int work_bits) {
    return from_rational(BigRat(n), work_bits);
  }
  static RealEnclosure zero(int work_bits) {
    return from_rational(BigRat(0), work_bits);
  }

  int work_bits() const { return static_cast<int>(lo_.prec()); }

  // Precision this enclosure was requested/refined to. Defaults to the
  // working precision of the bounds; refine_to_budget stamps the target.
  int precision_bits() const { return target_bits_ > 0 ? target_bits_ : work_bits(); }
  void set_precision_bits(int bits) { target_bits_ = bits; }

  mpfr_srcptr lo() const { return lo_.get(); }
  mpfr_srcptr hi() const { return hi_.get(); }

  bool is_exact() const { return exact_.has_value(); }
  const BigRat& exact_value() const { return *exact_; }

  bool contains(const BigRat& x) const {
    return mpfr_cmp_q(lo_.get(), x.get_mpq_t()) <= 0 &&
           mpfr_cmp_q(hi_.get(), x.get_mpq_t()) >= 0;
  }
  bool contains(long x) const { return contains(BigRat(x)); }
  // Interval containment: *this contains the whole of `inner`.
  bool contains(const RealEnclosure& inner) const {
    return mpfr_lessequal_p(lo_.get(), inner.lo()) &&
           mpfr_greaterequal_p(hi_.get(), inner.hi());
  }
  bool overlaps(const RealEnclosure& o) const {
    return !mpfr_less_p(hi_.get(), o.lo()) && !mpfr_less_p(o.hi(), lo_.get());
  }
  // Certainly below: hi < o.lo.
  bool strictly_below(const RealEnclosure& o) const {
    return mpfr_less_p(hi_.get(), o.lo());
  }
  bool strictly_positive() const { return mpfr_sgn(lo_.get()) > 0; }
  bool strictly_negative() const { return mpfr_sgn(hi_.get()) < 0; }

  bool identical(const RealEnclosure& o) const {
    return mpfr_equal_p(lo_.get(), o.lo()) && mpfr_equal_p(hi_.get(), o.hi()) &&
           is_exact() == o.is_exact() &&
           (!is_exact() || exact_value() == o.exact_value());
  }

  // Width budget: hi - lo <= 2^(1-target) * max(1, |hi|).
  bool meets_width_budget(int target_bits) const {
    detail::Mpfr w(lo_.prec()), b(lo_.prec());
    mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    mpfr_abs(b.get(), hi_.get(), MPFR_RNDU);
    if (mpfr_cmp_ui(b.get(), 1) < 0) mpfr_set_ui(b.get(), 1, MPFR_RNDN);
    mpfr_mul_2si(b.get(), b.get(), 1 - target_bits, MPFR_RNDN);  // exact
    return mpfr_lessequal_p(w.get(), b.get());
  }

  double midpoint_double() const {
    detail::Mpfr m(lo_.prec());
    mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    return mpfr_get_d(m.get(), MPFR_RNDN);
  }

  std::string lo_string() const { return detail::to_decimal_string(lo_.get()); }
  std::string hi_string() const { return detail::to_decimal_string(hi_.get()); }

  // ---- arithmetic, all outward-rounded ----

  friend RealEnclosure operator+(const RealEnclosure& a, const RealEnclosure& b) {
    RealEnclosure r(joint(a, b));
    mpfr_add(r.lo_.get(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), a.hi(), b.hi(), MPFR_RNDU);
    if (a.is_exact() && b.is_exact()) r.exact_ = a.exact_value() + b.exact_value();
    return r;
  }
  friend RealEnclosure operator-(const RealEnclosure& a, const RealEnclosure& b) {
    RealEnclosure r(joint(a, b));
    mpfr_sub(r.lo_.get(), a.lo(), b.hi(), MPFR_RNDD);
    mpfr_sub(r.hi_.get(), a.hi(), b.lo(), MPFR_RNDU);
    if (a.is_exact() && b.is_exact()) r.exact_ = a.exact_value() - b.exact_value();
    return r;
  }
  RealEnclosure operator-() const {
    RealEnclosure r(work_bits());
    mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
    mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
    if (is_exact()) r.exact_ = -exact_value();
    return r;
  }
  friend RealEnclosure operator*(const RealEnclosure& a, const RealEnclosure& b) {
    const int wp = joint(a, b);
    RealEnclosure r(wp);
    detail::Mpfr t(wp);
    bool first = true;
    for (mpfr_srcptr x : {a.lo(), a.hi()}) {
      for (mpfr_srcptr y : {b.lo(), b.hi()}) {
        mpfr_mul(t.get(), x, y, MPFR_RNDD);
        if (first || mpfr_less_p(t.get(), r.lo_.get())) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
        mpfr_mul(t.get(), x, y, MPFR_RNDU);
        if (first || mpfr_greater_p(t.get(), r.hi_.get())) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
        first = false;
      }
    }
    if (a.is_exact() && b.is_exact()) r.exact_ = a.exact_value() * b.exact_value();
    return r;
  }
  friend RealEnclosure operator/(const RealEnclosure& a, const RealEnclosure& b) {
    if (b.is_exact()) {
      if (b.exact_value() == 0) throw std::domain_error("division by exact zero");
      return a * from_rational(1 / b.exact_value(), joint(a, b));
    }
    return a * b.reciprocal();
  }

  RealEnclosure reciprocal() const {
    if (is_exact()) {
      if (exact_value() == 0) throw std::domain_error("reciprocal of exact zero");
      return from_rational(1 / exact_value(), work_bits());
    }
    if (mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0)
      throw PrecisionLossError("reciprocal of interval straddling zero");
    RealEnclosure r(work_bits());
    mpfr_ui_div(r.lo_.get(), 1, hi_.get(), MPFR_RNDD);
    mpfr_ui_div(r.hi_.get(), 1, lo_.get(), MPFR_RNDU);
    return r;
  }

  // Scaling by an exact integer is performed exactly: the bound precision is
  // grown so homogeneity identities hold bit-for-bit.
  RealEnclosure scale_exact(const BigInt& n) const {
    const int extra = std::max<size_t>(1, mpz_sizeinbase(n.get_mpz_t(), 2));
    RealEnclosure r(work_bits() + static_cast<int>(extra));
    if (mpz_sgn(n.get_mpz_t()) >= 0) {
      mpfr_mul_z(r.lo_.get(), lo_.get(), n.get_mpz_t(), MPFR_RNDD);
      mpfr_mul_z(r.hi_.get(), hi_.get(), n.get_mpz_t(), MPFR_RNDU);
    } else {
      mpfr_mul_z(r.lo_.get(), hi_.get(), n.get_mpz_t(), MPFR_RNDD);
      mpfr_mul_z(r.hi_.get(), lo_.get(), n.get_mpz_t(), MPFR_RNDU);
    }
    if (is_exact()) r.exact_ = exact_value() * BigRat(n);
    return r;
  }

  friend RealEnclosure abs(const RealEnclosure& a) {
    if (mpfr_sgn(a.lo()) >= 0) return a;
    if (mpfr_sgn(a.hi()) <= 0) return -a;
    // straddles zero
    RealEnclosure r(a.work_bits());
    mpfr_set_ui(r.lo_.get(), 0, MPFR_RNDN);
    detail::Mpfr nl(a.work_bits());
    mpfr_neg(nl.get(), a.lo(), MPFR_RNDU);
    if (mpfr_greater_p(nl.get(), a.hi()))
      mpfr_set(r.hi_.get(), nl.get(), MPFR_RNDU);
    else
      mpfr_set(r.hi_.get(), a.hi(), MPFR_RNDU);
    if (a.is_exact()) r.exact_ = abs(a.exact_value());
    return r;
  }

  // ---- monotone elementary functions, directed rounding ----

  friend RealEnclosure sqrt(const RealEnclosure& a) {
    if (a.is_exact()) {
      const BigRat& x = a.exact_value();
      if (x < 0) throw std::domain_error("sqrt of negative value");
      if (x == 0) return zero(a.work_bits());
      if (mpz_perfect_square_p(x.get_num_mpz_t()) &&
          mpz_perfect_square_p(x.get_den_mpz_t())) {
        BigInt n, d;
        mpz_sqrt(n.get_mpz_t(), x.get_num_mpz_t());
        mpz_sqrt(d.get_mpz_t(), x.get_den_mpz_t());
        return from_rational(make_rat(n, d), a.work_bits());
      }
    }
    if (mpfr_sgn(a.hi()) < 0) throw std::domain_error("sqrt of negative interval");
    if (mpfr_sgn(a.lo()) < 0) throw PrecisionLossError("sqrt: interval dips below zero");
    RealEnclosure r(a.work_bits());
    mpfr_sqrt(r.lo_.get(), a.lo(), MPFR_RNDD);
    mpfr_sqrt(r.hi_.get(), a.hi(), MPFR_RNDU);
    return r;
  }

  friend RealEnclosure log(const RealEnclosure& a) {
    if (a.is_exact()) {
      if (a.exact_value() <= 0) throw std::domain_error("log of non-positive value");
      if (a.exact_value() == 1) return zero(a.work_bits());
    }
    if (mpfr_sgn(a.hi()) <= 0) throw std::domain_error("log of non-positive interval");
    if (mpfr_sgn(a.lo()) <= 0) throw PrecisionLossError("log: interval touches zero");
    RealEnclosure r(a.work_bits());
    mpfr_log(r.lo_.get(), a.lo(), MPFR_RNDD);
    mpfr_log(r.hi_.get(), a.hi(), MPFR_RNDU);
    return r;
  }

  friend RealEnclosure acosh(const RealEnclosure& a) {
    if (a.is_exact()) {
      if (a.exact_value() < 1) throw std::domain_error("acosh below 1");
      if (a.exact_value() == 1) return zero(a.work_bits());
    }
    if (mpfr_cmp_ui(a.hi(), 1) < 0) throw std::domain_error("acosh of interval below 1");
    if (mpfr_cmp_ui(a.lo(), 1) < 0) throw PrecisionLossError("acosh: interval dips below 1");
    RealEnclosure r(a.work_bits());
    mpfr_acosh(r.lo_.get(), a.lo(), MPFR_RNDD);
    mpfr_acosh(r.hi_.get(), a.hi(), MPFR_RNDU);
    return r;
  }

  friend RealEnclosure exp(const RealEnclosure& a) {
    RealEnclosure r(a.work_bits());
    mpfr_exp(r.lo_.get(), a.lo(), MPFR_RNDD);
    mpfr_exp(r.hi_.get(), a.hi(), MPFR_RNDU);
    if (a.is_exact() && a.exact_value() == 0) r.exact_ = BigRat(1);
    return r;
  }

  friend RealEnclosure cosh(const RealEnclosure& a) {
    RealEnclosure r(a.work_bits());
    if (mpfr_sgn(a.lo()) >= 0) {
      mpfr_cosh(r.lo_.get(), a.lo(), MPFR_RNDD);
      mpfr_cosh(r.hi_.get(), a.hi(), MPFR_RNDU);
    } else if (mpfr_sgn(a.hi()) <= 0) {
      mpfr_cosh(r.lo_.get(), a.hi(), MPFR_RNDD);
      mpfr_cosh(r.hi_.get(), a.lo(), MPFR_RNDU);
    } else {
      mpfr_set_ui(r.lo_.get(), 1, MPFR_RNDN);
      detail::Mpfr m(a.work_bits());
      mpfr_neg(m.get(), a.lo(), MPFR_RNDU);
      if (mpfr_less_p(m.get(), a.hi())) mpfr_set(m.get(), a.hi(), MPFR_RNDU);
      mpfr_cosh(r.hi_.get(), m.get(), MPFR_RNDU);
    }
    if (a.is_exact() && a.exact_value() == 0) r.exact_ = BigRat(1);
    return r;
  }

  // x^(2/3) for x >= 0, via cbrt(x^2).
  friend RealEnclosure pow_two_thirds(const RealEnclosure& a) {
    if (a.is_exact() && a.exact_value() == 0) return zero(a.work_bits());
    if (mpfr_sgn(a.lo()) < 0) throw PrecisionLossError("pow_two_thirds: negative interval");
    RealEnclosure r(a.work_bits());
    detail::Mpfr t(a.work_bits());
    mpfr_sqr(t.get(), a.lo(), MPFR_RNDD);
    mpfr_cbrt(r.lo_.get(), t.get(), MPFR_RNDD);
    mpfr_sqr(t.get(), a.hi(), MPFR_RNDU);
    mpfr_cbrt(r.hi_.get(), t.get(), MPFR_RNDU);
    return r;
  }

 private:
  explicit RealEnclosure(int work_bits)
      : lo_(std::max<mpfr_prec_t>(MPFR_PREC_MIN, work_bits)),
        hi_(std::max<mpfr_prec_t>(MPFR_PREC_MIN, work_bits)) {}

  static int joint(const RealEnclosure& a, const RealEnclosure& b) {
    return std::max(a.work_bits(), b.work_bits());
  }

  detail::Mpfr lo_, hi_;
  int target_bits_ = 0;
  std::optional<BigRat> exact_;
};

// A value that can be re-evaluated at any working precision; the enclosure
// returned must always contain the same exact real.
using LazyReal = std::function<RealEnclosure(int work_bits)>;

inline LazyReal lazy_rational(BigRat x) {
  return [x = std::move(x)](int wp) { return RealEnclosure::from_rational(x, wp); };
}

// Evaluate at increasing precision until the width budget for `target_bits`
// holds. PrecisionLossError from the evaluator triggers escalation too.
template <typename F>
RealEnclosure refine_to_budget(const F& eval, int target_bits,
                               int cap_bits = kPrecisionCapBits) {
  for (int wp = target_bits + kGuardBits; wp <= cap_bits; wp += wp) {
    try {
      RealEnclosure e = eval(wp);
      if (e.meets_width_budget(target_bits)) {
        e.set_precision_bits(target_bits);
        return e;
      }
    } catch (const PrecisionLossError&) {
      // retry wider
    }
  }
  throw PrecisionCapError("refinement exceeded the precision cap");
}

// ---- module operations ----

inline RealEnclosure enclose_sqrt(const BigRat& x, int precision_bits) {
  if (x < 0) throw std::domain_error("enclose_sqrt: negative input");
  return refine_to_budget(
      [&](int wp) { return sqrt(RealEnclosure::from_rational(x, wp)); },
      precision_bits);
}

inline RealEnclosure enclose_log(const BigRat& x, int precision_bits) {
  if (x <= 0) throw std::domain_error("enclose_log: non-positive input");
  return refine_to_budget(
      [&](int wp) { return log(RealEnclosure::from_rational(x, wp)); },
      precision_bits);
}

inline RealEnclosure enclose_acosh(const BigRat& x, int precision_bits) {
  if (x < 1) throw std::domain_error("enclose_acosh: input below 1");
  return refine_to_budget(
      [&](int wp) { return acosh(RealEnclosure::from_rational(x, wp)); },
      precision_bits);
}

inline RealEnclosure enclose_exp(const BigRat& x, int precision_bits) {
  return refine_to_budget(
      [&](int wp) { return exp(RealEnclosure::from_rational(x, wp)); },
      precision_bits);
}

// Certified comparison of two lazily refinable reals.
//
// Less/Greater are returned only once the enclosures are disjoint; Equal only
// when both sides reduce to the same exact rational. If the precision cap is
// reached with overlapping enclosures the comparison is reported undecided.
inline Order certified_compare(const LazyReal& a, const LazyReal& b,
                               int start_bits = kCompareStartBits,
                               int cap_bits = kPrecisionCapBits) {
  if (start_bits < 8) start_bits = 8;
  for (int p = start_bits;; p += p) {
    bool at_cap = p >= cap_bits;
    if (p > cap_bits) p = cap_bits;
    try {
      RealEnclosure ea = a(p), eb = b(p);
      if (ea.is_exact() && eb.is_exact())
        return ea.exact_value() < eb.exact_value()   ? Order::Less
               : ea.exact_value() > eb.exact_value() ? Order::Greater
                                                     : Order::Equal;
      if (ea.strictly_below(eb)) return Order::Less;
      if (eb.strictly_below(ea)) return Order::Greater;
    } catch (const PrecisionLossError&) {
      // widen and retry
    } catch (const PrecisionCapError&) {
      return Order::UndecidedAtCap;
    }
    if (at_cap) return Order::UndecidedAtCap;
  }
}

inline Order certified_compare(const LazyReal& a, const BigRat& b,
                               int start_bits = kCompareStartBits,
                               int cap_bits = kPrecisionCapBits) {
  return certified_compare(a, lazy_rational(b), start_bits, cap_bits);
}

}  // namespace mnorm
