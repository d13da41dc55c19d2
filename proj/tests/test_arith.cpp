#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mnorm/arith.hpp"

using namespace mnorm;

namespace {

// Test-side oracles, independent of MPFR: plain Newton / series arithmetic
// over exact rationals with explicit error control.

// Newton iteration for sqrt(x), returning a rational r with |r - sqrt(x)|
// certified below eps (monotone from above after the first step).
BigRat newton_sqrt(const BigRat& x, const BigRat& eps) {
  if (x == 0) return BigRat(0);
  BigRat r = x < 1 ? BigRat(1) : x;
  for (int i = 0; i < 400; ++i) {
    BigRat next = (r + x / r) / 2;
    // r >= sqrt(x) after the first step, so r - x/r bounds 2*(r - sqrt(x)).
    if (i > 0 && r - x / r < eps) return next;
    r = next;
  }
  throw std::runtime_error("newton_sqrt failed to converge");
}

// atanh series: log(x) = 2 * sum_{j odd} u^j / j with u = (x-1)/(x+1),
// truncated with a geometric tail bound below eps.
BigRat series_log(const BigRat& x, const BigRat& eps) {
  BigRat u = (x - 1) / (x + 1);
  BigRat u2 = u * u, term = u, sum = 0;
  for (long j = 1; j < 4000; j += 2) {
    sum += term / j;
    term *= u2;
    BigRat tail = term / (1 - u2);  // geometric bound on the remainder
    if (abs(tail) < eps / 4) return 2 * sum;
  }
  throw std::runtime_error("series_log failed to converge");
}

// The enclosure lies entirely within eps of the oracle value.
bool agrees_within(const RealEnclosure& e, const BigRat& value, const BigRat& eps) {
  BigRat lo = value - eps, hi = value + eps;
  return mpfr_cmp_q(e.lo(), lo.get_mpq_t()) >= 0 &&
         mpfr_cmp_q(e.hi(), hi.get_mpq_t()) <= 0;
}

BigRat pow10_inv(int k) {
  BigRat eps(1);
  for (int i = 0; i < k; ++i) eps /= 10;
  return eps;
}

}  // namespace

TEST_CASE("sqrt enclosures: exact cases and the Newton oracle") {
  CHECK(enclose_sqrt(BigRat(0), 128).is_exact());
  CHECK(enclose_sqrt(BigRat(0), 128).exact_value() == 0);

  RealEnclosure perfect = enclose_sqrt(BigRat(9, 4), 128);
  CHECK(perfect.is_exact());
  CHECK(perfect.exact_value() == BigRat(3, 2));
  CHECK(mpfr_equal_p(perfect.lo(), perfect.hi()));  // dyadic: zero width

  BigRat eps = pow10_inv(40);
  BigRat root5 = newton_sqrt(BigRat(5), eps);
  RealEnclosure e5 = enclose_sqrt(BigRat(5), 192);
  CHECK(agrees_within(e5, root5, eps * 2));

  CHECK_THROWS_AS(enclose_sqrt(BigRat(-1), 128), std::domain_error);
}

TEST_CASE("log enclosures: identity, series oracle, domain") {
  RealEnclosure one = enclose_log(BigRat(1), 128);
  CHECK(one.is_exact());
  CHECK(one.exact_value() == 0);

  BigRat eps = pow10_inv(40);
  BigRat log2 = series_log(BigRat(2), eps);
  BigRat log89 = series_log(BigRat(8, 9), eps);
  CHECK(agrees_within(enclose_log(BigRat(2), 192), log2, eps * 2));
  CHECK(agrees_within(enclose_log(BigRat(8, 9), 192), log89, eps * 2));
  CHECK(log89 < 0);  // the constant L of the corner at (1,1)

  CHECK_THROWS_AS(enclose_log(BigRat(0), 128), std::domain_error);
  CHECK_THROWS_AS(enclose_log(BigRat(-3), 128), std::domain_error);
}

TEST_CASE("acosh enclosures: branch point and log-identity oracle") {
  RealEnclosure at1 = enclose_acosh(BigRat(1), 128);
  CHECK(at1.is_exact());
  CHECK(at1.exact_value() == 0);

  // acosh(x) = log(x + sqrt(x^2-1)) composed from the test-side oracles
  BigRat eps = pow10_inv(30);
  for (BigRat x : {BigRat(3, 2), BigRat(3)}) {
    BigRat s = newton_sqrt(x * x - 1, eps);
    BigRat expected = series_log(x + s, eps);
    CHECK(agrees_within(enclose_acosh(x, 192), expected, eps * 10));
  }

  CHECK_THROWS_AS(enclose_acosh(BigRat(1, 2), 128), std::domain_error);
}

TEST_CASE("acosh/log identity as interval containment on random rationals") {
  std::mt19937_64 rng(20210728);
  std::uniform_int_distribution<long> num(1, 1000000), den(1, 1000);
  for (int i = 0; i < 1000; ++i) {
    BigRat x = BigRat(num(rng), den(rng)) + 1;  // in [1, 1e6+1]
    RealEnclosure direct = enclose_acosh(x, 96);
    RealEnclosure via = refine_to_budget(
        [&](int wp) {
          RealEnclosure xe = RealEnclosure::from_rational(x, wp);
          return log(xe + sqrt(xe * xe - RealEnclosure::from_rational(BigRat(1), wp)));
        },
        96);
    CHECK(direct.overlaps(via));
  }
}

TEST_CASE("interval soundness and monotone refinement") {
  for (BigRat x : {BigRat(5), BigRat(7, 3), BigRat(123456, 789)}) {
    RealEnclosure low = enclose_sqrt(x, 64);
    RealEnclosure mid = enclose_sqrt(x, 128);
    RealEnclosure high = enclose_sqrt(x, 256);
    CHECK(low.contains(mid));
    CHECK(mid.contains(high));
    CHECK(low.meets_width_budget(64));
    CHECK(mid.meets_width_budget(128));
  }
  for (BigRat x : {BigRat(2), BigRat(99, 7)}) {
    RealEnclosure low = enclose_log(x, 64);
    RealEnclosure high = enclose_log(x, 512);
    CHECK(low.contains(high));
  }
}

TEST_CASE("certified_compare: exact, separated, and undecided outcomes") {
  CHECK(certified_compare(lazy_rational(BigRat(0)),
                          [](int wp) { return enclose_log(BigRat(1), wp); }) ==
        Order::Equal);
  CHECK(certified_compare([](int wp) { return enclose_log(BigRat(2), wp); },
                          BigRat(7, 10)) == Order::Less);
  CHECK(certified_compare([](int wp) { return enclose_sqrt(BigRat(2), wp); },
                          BigRat(7, 5)) == Order::Greater);

  // the same transcendental through two routes can never separate: the cap
  // must surface as a value, not an endless loop
  LazyReal a = [](int wp) { return enclose_acosh(BigRat(3), wp); };
  LazyReal b = [](int wp) {
    RealEnclosure x = RealEnclosure::from_rational(BigRat(3), wp);
    return log(x + sqrt(x * x - RealEnclosure::from_rational(BigRat(1), wp)));
  };
  CHECK(certified_compare(a, b, 128, 512) == Order::UndecidedAtCap);
}

TEST_CASE("enclosure arithmetic keeps exactness and outward bounds") {
  RealEnclosure a = RealEnclosure::from_rational(BigRat(1, 3), 128);
  RealEnclosure b = RealEnclosure::from_rational(BigRat(1, 6), 128);
  RealEnclosure sum = a + b;
  CHECK(sum.is_exact());
  CHECK(sum.exact_value() == BigRat(1, 2));

  RealEnclosure prod = a * b;
  CHECK(prod.is_exact());
  CHECK(prod.exact_value() == BigRat(1, 18));

  RealEnclosure q = a / b;
  CHECK(q.is_exact());
  CHECK(q.exact_value() == 2);

  RealEnclosure scaled = enclose_sqrt(BigRat(2), 128).scale_exact(BigInt(10));
  RealEnclosure direct = refine_to_budget(
      [](int wp) {
        return sqrt(RealEnclosure::from_rational(BigRat(200), wp));
      },
      128);
  CHECK(scaled.overlaps(direct));

  CHECK_THROWS_AS(a / RealEnclosure::from_rational(BigRat(0), 128),
                  std::domain_error);
}

TEST_CASE("division by an interval straddling zero escalates, not crashes") {
  RealEnclosure tiny = enclose_log(BigRat(1), 128);  // exact zero
  RealEnclosure wide =
      enclose_sqrt(BigRat(2), 64) - enclose_sqrt(BigRat(2), 64);  // straddles 0
  CHECK_THROWS_AS(wide.reciprocal(), PrecisionLossError);
  CHECK_THROWS_AS(tiny.reciprocal(), std::domain_error);
}
