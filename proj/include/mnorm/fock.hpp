#pragma once

// Fock's function Psi on [0,1/2], its exact one-sided derivatives, the corner
// slopes of the stable-norm ball, the graph-to-sphere map, and Dehn-twist
// length asymptotics.
//
//   Psi(p/q) = acosh(3 m_{T(p/q)} / 2) / q,   T(p/q) = p/(q-p).
//
// With Farey parents r1/s1 < p/q < r2/s2 and Markov triple
// (n1, n, n2) = (m_{T(r1/s1)}, m_{T(p/q)}, m_{T(r2/s2)}):
//
//   left  derivative = -s2 acosh(3n/2) - q log(3n2/2 - (9n n2 - 6n1)/(2 sqrt(9n^2-4)))
//   right derivative =  s1 acosh(3n/2) + q log(3n1/2 - (9n n1 - 6n2)/(2 sqrt(9n^2-4)))
//
// The discriminant under the radical is 9n^2-4 with n the center label; the
// difference-quotient oracle in the verification suite pins this convention.
//
// At a corner (q,p) with ell = acosh(3 m_{p/q} / 2) and L, R the one-sided
// derivatives of Psi at T^{-1}(p/q):
//
//   left slope  mu+ = -(ell - R p)/(ell + R q)
//   right slope mu- = -(ell - L p)/(ell + L q)

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mnorm/arith.hpp"
#include "mnorm/farey.hpp"
#include "mnorm/markov.hpp"
#include "mnorm/norm.hpp"

namespace mnorm {

enum class Side { Left, Right };

namespace detail {

inline void require_psi_domain(const Fraction& f) {
  if (f.is_infinity() || 2 * f.num() > f.den())
    throw std::invalid_argument("Psi is defined on [0, 1/2]");
}

inline RealEnclosure acosh_three_halves(const BigInt& m, int wp) {
  return acosh(RealEnclosure::from_rational(make_rat(3 * m, BigInt(2)), wp));
}

inline RealEnclosure psi_eval(const Fraction& f, int wp) {
  BigInt m = markov_number(t_map(f));
  return acosh_three_halves(m, wp) / RealEnclosure::from_integer(f.den(), wp);
}

// Label of the curve T(fr); the formal parent 1/0 carries label 1.
inline BigInt label_of_t(const Fraction& fr) {
  if (fr.is_infinity()) return BigInt(1);
  return markov_number(t_map(fr));
}

// One-sided derivative of Psi at f, evaluated at working precision.
// `center_radical` selects the discriminant convention: true uses 9n^2-4,
// false the side label's 9n_i^2-4 (kept only so the oracle suite can
// demonstrate that the latter is wrong).
inline RealEnclosure psi_deriv_eval(const Fraction& f, Side side, int wp,
                                    bool center_radical = true) {
  FareyTriple t = farey_parents(f);
  BigInt n1 = label_of_t(t.left);
  BigInt n = label_of_t(f);
  BigInt n2 = label_of_t(t.right);
  const BigInt& q = f.den();

  BigInt lead = (side == Side::Left) ? n2 : n1;
  BigInt other = (side == Side::Left) ? n1 : n2;
  BigInt rad = center_radical ? 9 * n * n - 4 : 9 * lead * lead - 4;

  RealEnclosure sq = sqrt(RealEnclosure::from_integer(rad, wp));
  RealEnclosure frac =
      RealEnclosure::from_integer(9 * n * lead - 6 * other, wp) /
      sq.scale_exact(BigInt(2));
  RealEnclosure logarg =
      RealEnclosure::from_rational(make_rat(3 * lead, BigInt(2)), wp) - frac;
  RealEnclosure lg = log(logarg).scale_exact(q);
  RealEnclosure ac = acosh_three_halves(n, wp);
  if (side == Side::Left) return -(ac.scale_exact(t.right.den()) + lg);
  return ac.scale_exact(t.left.den()) + lg;
}

}  // namespace detail

inline RealEnclosure psi(const Fraction& f, int precision_bits = kNormDefaultBits) {
  detail::require_psi_domain(f);
  return refine_to_budget([&](int wp) { return detail::psi_eval(f, wp); },
                          precision_bits);
}

inline RealEnclosure psi_left_derivative(const Fraction& f,
                                         int precision_bits = kNormDefaultBits) {
  detail::require_psi_domain(f);
  if (f.is_zero())
    throw std::invalid_argument("left derivative undefined at the endpoint 0/1");
  RealEnclosure d = refine_to_budget(
      [&](int wp) { return detail::psi_deriv_eval(f, Side::Left, wp); },
      precision_bits);
  // Psi is strictly decreasing
  if (!d.strictly_negative())
    throw std::logic_error("left derivative of Psi not negative at " + f.str());
  return d;
}

inline RealEnclosure psi_right_derivative(const Fraction& f,
                                          int precision_bits = kNormDefaultBits) {
  detail::require_psi_domain(f);
  if (2 * f.num() == f.den())
    throw std::invalid_argument("right derivative undefined at the endpoint 1/2");
  RealEnclosure d = refine_to_budget(
      [&](int wp) { return detail::psi_deriv_eval(f, Side::Right, wp); },
      precision_bits);
  if (!d.strictly_negative())
    throw std::logic_error("right derivative of Psi not negative at " + f.str());
  return d;
}

// The k-th Dehn-twist approximant of f from one side: (r + k p)/(s + k q)
// for the corresponding Farey parent r/s.
inline Fraction twist_approximant(const Fraction& f, Side side, long k) {
  FareyTriple t = farey_parents(f);
  const Fraction& par = (side == Side::Left) ? t.left : t.right;
  return Fraction(par.num() + k * f.num(), par.den() + k * f.den());
}

// Difference quotient (Psi(f) - Psi(u_k/v_k)) / (f - u_k/v_k) along the
// twist sequence; the independent oracle for the closed forms above.
inline RealEnclosure finite_difference_derivative(
    const Fraction& f, Side side, long k, int precision_bits = kNormDefaultBits) {
  detail::require_psi_domain(f);
  if (k < 1) throw std::invalid_argument("twist index must be positive");
  if (side == Side::Left && f.is_zero())
    throw std::invalid_argument("no left approximants at 0/1");
  if (side == Side::Right && 2 * f.num() == f.den())
    throw std::invalid_argument("no right approximants at 1/2");
  Fraction uk = twist_approximant(f, side, k);
  // f - u_k/v_k = +-1/(q v_k) exactly, sign by side.
  BigInt scale = f.den() * uk.den();
  if (side == Side::Right) scale = -scale;
  return refine_to_budget(
      [&](int wp) {
        return (detail::psi_eval(f, wp) - detail::psi_eval(uk, wp))
            .scale_exact(scale);
      },
      precision_bits);
}

struct CornerSlopes {
  CoprimePair at;
  RealEnclosure ell;  // half-length acosh(3 m_{p/q} / 2) = ||(q,p)||_s / 2
  std::optional<RealEnclosure> left_deriv;   // L, absent at (1,0)
  std::optional<RealEnclosure> right_deriv;  // R, absent at (1,1)
  std::optional<RealEnclosure> mu_minus;     // right slope, needs L
  std::optional<RealEnclosure> mu_plus;      // left slope, needs R
};

namespace detail {

inline RealEnclosure corner_mu_eval(const CoprimePair& v, Side side, int wp) {
  Fraction t0 = t_inverse(v.fraction());
  BigInt m = markov_number(v.fraction());
  RealEnclosure ell = acosh_three_halves(m, wp);
  // mu- (side Left) uses the left derivative L, mu+ (side Right) uses R.
  RealEnclosure d = psi_deriv_eval(t0, side, wp);
  RealEnclosure num = ell - d.scale_exact(to_bigint(v.p));
  RealEnclosure den = ell + d.scale_exact(to_bigint(v.q));
  return -(num / den);
}

}  // namespace detail

// One-sided slopes of the norm-ball boundary at the corner v/||v||_s.
// mu+ (the left slope) exists when p/q < 1; mu- (the right slope) when
// p/q > 0. mu- < mu+ strictly at every interior corner.
inline CornerSlopes corner_slopes(const CoprimePair& v,
                                  int precision_bits = kNormDefaultBits) {
  Fraction f = v.fraction();
  Fraction t0 = t_inverse(f);
  CornerSlopes out{
      v,
      refine_to_budget(
          [&](int wp) {
            return detail::acosh_three_halves(markov_number(f), wp);
          },
          precision_bits),
      std::nullopt, std::nullopt, std::nullopt, std::nullopt};
  if (v.p > 0) {
    out.left_deriv = refine_to_budget(
        [&](int wp) { return detail::psi_deriv_eval(t0, Side::Left, wp); },
        precision_bits);
    out.mu_minus = refine_to_budget(
        [&](int wp) { return detail::corner_mu_eval(v, Side::Left, wp); },
        precision_bits);
  }
  if (v.p < v.q) {
    out.right_deriv = refine_to_budget(
        [&](int wp) { return detail::psi_deriv_eval(t0, Side::Right, wp); },
        precision_bits);
    out.mu_plus = refine_to_budget(
        [&](int wp) { return detail::corner_mu_eval(v, Side::Right, wp); },
        precision_bits);
  }
  return out;
}

// sigma- = mu+ at (1,0), sigma+ = mu- at (1,1): the extreme boundary slopes.
inline RealEnclosure sigma_minus(int precision_bits = kNormDefaultBits) {
  return refine_to_budget(
      [](int wp) { return detail::corner_mu_eval(CoprimePair(1, 0), Side::Right, wp); },
      precision_bits);
}
inline RealEnclosure sigma_plus(int precision_bits = kNormDefaultBits) {
  return refine_to_budget(
      [](int wp) { return detail::corner_mu_eval(CoprimePair(1, 1), Side::Left, wp); },
      precision_bits);
}

inline LazyReal sigma_minus_lazy() {
  return [](int wp) { return sigma_minus(wp); };
}
inline LazyReal sigma_plus_lazy() {
  return [](int wp) { return sigma_plus(wp); };
}

// f: (x, y) -> ((1-x)/2y, x/2y) applied to (t, Psi(t)); lands on the unit
// sphere of the stable norm.
inline std::pair<RealEnclosure, RealEnclosure> graph_to_sphere(
    const Fraction& t, int precision_bits = kNormDefaultBits) {
  detail::require_psi_domain(t);
  auto coord = [&](bool first) {
    return refine_to_budget(
        [&](int wp) {
          RealEnclosure two_psi = detail::psi_eval(t, wp).scale_exact(BigInt(2));
          BigRat c = first ? 1 - t.value() : t.value();
          return RealEnclosure::from_rational(c, wp) / two_psi;
        },
        precision_bits);
  };
  return {coord(true), coord(false)};
}

struct DehnRow {
  long k;
  RealEnclosure residual;  // exact half-length minus ((k+1) ell(gamma) + const)
  RealEnclosure scaled;    // residual * e^{2 k ell(gamma)}
};

// Twist-length asymptotics at f: the half-length of the k-fold twist of the
// left parent's curve approaches (k+1) ell(gamma) + constant exponentially.
inline std::vector<DehnRow> dehn_asymptotics(const Fraction& f, long k_max,
                                             int precision_bits = kNormDefaultBits) {
  detail::require_psi_domain(f);
  if (f.is_zero()) throw std::invalid_argument("dehn_asymptotics needs f > 0");
  if (k_max < 0) throw std::invalid_argument("k_max must be non-negative");
  auto labels = markov_triple_at(f);
  const BigInt &n1 = labels[0], &n = labels[1], &n2 = labels[2];
  std::vector<DehnRow> rows;
  rows.reserve(k_max + 1);
  for (long k = 0; k <= k_max; ++k) {
    Fraction uk = twist_approximant(f, Side::Left, k);
    BigInt mk = markov_number(t_map(uk));
    auto residual_eval = [&](int wp) {
      RealEnclosure ell_g = detail::acosh_three_halves(n, wp);
      RealEnclosure sq = sqrt(RealEnclosure::from_integer(9 * n * n - 4, wp));
      RealEnclosure frac = RealEnclosure::from_integer(9 * n * n2 - 6 * n1, wp) /
                           sq.scale_exact(BigInt(2));
      RealEnclosure cterm =
          log(RealEnclosure::from_rational(make_rat(3 * n2, BigInt(2)), wp) - frac);
      RealEnclosure ell_k = detail::acosh_three_halves(mk, wp);
      return ell_k - ell_g.scale_exact(BigInt(k + 1)) - cterm;
    };
    RealEnclosure residual = refine_to_budget(residual_eval, precision_bits);
    RealEnclosure scaled = refine_to_budget(
        [&](int wp) {
          RealEnclosure ell_g = detail::acosh_three_halves(n, wp);
          return residual_eval(wp) * exp(ell_g.scale_exact(BigInt(2 * k)));
        },
        precision_bits);
    rows.push_back({k, std::move(residual), std::move(scaled)});
  }
  return rows;
}

}  // namespace mnorm
