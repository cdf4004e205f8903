#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "zumm/common.hpp"

namespace zumm::padic {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// ord_p(n) for n != 0.
long ord_p(const BigInt& n, long p);

/// p-adic valuation of a nonzero rational, ord_p(num) - ord_p(den).
long valuation(const Rational& q, long p);

/// |q|_p as an exact rational; |0|_p = 0.
Rational padic_norm(const Rational& q, long p);

/// The negative-power tail {q}_p of the p-adic expansion, as a rational in
/// [0, 1) whose denominator is a power of p.
Rational fractional_part(const Rational& q, long p);

/// Truncated p-adic expansion  q = p^N (d_0 + d_1 p + ... + d_{L-1} p^{L-1}) + O(p^{N+L}).
/// Digits are little-endian from the leading term; zero has no digits.
class PAdicNumber {
 public:
  static PAdicNumber from_rational(const Rational& q, long prime, int precision);

  long prime() const noexcept { return prime_; }
  long valuation() const noexcept { return valuation_; }
  int precision() const noexcept { return precision_; }
  const std::vector<int>& digits() const noexcept { return digits_; }
  bool is_zero() const noexcept { return digits_.empty(); }

  /// Smallest exponent whose digit is NOT known. Zero is known exactly.
  long known_through() const noexcept;

  /// p^{-N}, or 0 for the zero value.
  Rational norm() const;

  /// The rational the expansion was built from.
  const Rational& exact() const noexcept { return exact_; }

  /// p^N * sum_k d_k p^k, i.e. the value truncated to the stored digits.
  Rational truncated() const;

 private:
  long prime_ = 2;
  long valuation_ = 0;
  int precision_ = 1;
  std::vector<int> digits_;
  Rational exact_;
};

/// Ball { xi : |xi - center|_p <= p^{-level} }.
struct PAdicBall {
  long prime;
  PAdicNumber center;
  long level;

  /// Haar measure p^{-level}.
  Rational measure() const;
};

/// exp(2 pi i {xi}_p).
Complex additive_character(long p, const Rational& xi);

/// 1 iff |xi - center|_p <= p^{-level}; both expansions must carry enough
/// digits to decide the congruence.
int indicator_ball(const PAdicBall& ball, const PAdicNumber& xi);

/// Integrals of |xi|_p^{s-1} over two regions that are easy to confuse:
/// the open unit ball {|xi|_p < 1} = pZ_p, and the unit group {|xi|_p = 1}.
enum class Region { OpenUnitBall, UnitGroup };

struct ShellSum {
  Complex value;        ///< finite sum over shells k = 1..K
  double tail_bound;    ///< |sum over k > K|, geometric
  Complex closed_form;  ///< (p-1)/p * p^{-s} / (1 - p^{-s})
};

/// Shell sum of |xi|_p^{s-1} over {|xi|_p < 1}; Re(s) > 0.
ShellSum haar_integrate_norm_power(long p, Complex s, int shells);

struct ExactShellSum {
  Rational value;
  Rational tail_bound;
  Rational closed_form;
};

/// Same sum in exact arithmetic for an integer exponent s >= 1.
ExactShellSum haar_integrate_norm_power_exact(long p, long s, int shells);

/// Integral of |xi|_p^{s-1} over the given region (closed form).
Complex haar_norm_power_closed_form(long p, Complex s, Region region);

/// Integral of a function that is constant on cosets of p^level Z_p, over the
/// ball {|xi|_p <= p^radius_exp}. f receives the coset representative a/p^radius_exp
/// as (a, radius_exp) with 0 <= a < p^(radius_exp + level).
Complex integrate_locally_constant(long p, long radius_exp, long level,
                                   const std::function<Complex(long long a)>& f);

}  // namespace zumm::padic
