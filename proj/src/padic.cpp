#include "zumm/padic.hpp"

#include <cmath>
#include <limits>

namespace zumm::padic {

namespace {

void require_prime(long p) {
  require(is_prime(p), "p must be prime, got " + std::to_string(p));
}

BigInt ipow(long p, long e) {
  BigInt r = 1;
  for (long i = 0; i < e; ++i) r *= p;
  return r;
}

Rational pow_rational(long p, long e) {
  if (e >= 0) return Rational(ipow(p, e));
  return Rational(BigInt(1), ipow(p, -e));
}

// Modular inverse of u modulo m (gcd(u, m) = 1).
BigInt inverse_mod(BigInt u, const BigInt& m) {
  BigInt t = 0, new_t = 1, r = m, new_r = u % m;
  if (new_r < 0) new_r += m;
  while (new_r != 0) {
    BigInt q = r / new_r;
    BigInt tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += m;
  return t;
}

}  // namespace

long ord_p(const BigInt& n, long p) {
  require(n != 0, "ord_p(0) is undefined");
  BigInt m = abs(n);
  long k = 0;
  while (m % p == 0) {
    m /= p;
    ++k;
  }
  return k;
}

long valuation(const Rational& q, long p) {
  require(q != 0, "valuation of zero is undefined");
  return ord_p(numerator(q), p) - ord_p(denominator(q), p);
}

Rational padic_norm(const Rational& q, long p) {
  require_prime(p);
  if (q == 0) return Rational(0);
  return pow_rational(p, -valuation(q, p));
}

Rational fractional_part(const Rational& q, long p) {
  require_prime(p);
  if (q == 0) return Rational(0);
  BigInt num = numerator(q);
  BigInt den = denominator(q);
  const long e = ord_p(den, p);
  if (e == 0) return Rational(0);
  const BigInt pe = ipow(p, e);
  const BigInt unit = den / pe;
  // q = num / (p^e u) = c / p^e + (element of Z_p) with c = num * u^{-1} mod p^e.
  BigInt c = (num % pe) * inverse_mod(unit % pe, pe) % pe;
  if (c < 0) c += pe;
  return Rational(c, pe);
}

PAdicNumber PAdicNumber::from_rational(const Rational& q, long prime, int precision) {
  require_prime(prime);
  require(precision >= 1, "precision must be positive");
  PAdicNumber x;
  x.prime_ = prime;
  x.precision_ = precision;
  x.exact_ = q;
  if (q == 0) return x;
  x.valuation_ = padic::valuation(q, prime);
  // Unit part u = q p^{-N}; digits are u mod p^L read off by long division.
  Rational u = q * pow_rational(prime, -x.valuation_);
  BigInt num = numerator(u);
  BigInt den = denominator(u);
  const BigInt modulus = ipow(prime, precision);
  BigInt r = (num % modulus) * inverse_mod(den % modulus, modulus) % modulus;
  if (r < 0) r += modulus;
  x.digits_.reserve(precision);
  for (int k = 0; k < precision; ++k) {
    x.digits_.push_back(static_cast<int>(r % prime));
    r /= prime;
  }
  return x;
}

long PAdicNumber::known_through() const noexcept {
  if (is_zero()) return std::numeric_limits<long>::max();
  return valuation_ + precision_;
}

Rational PAdicNumber::norm() const {
  if (is_zero()) return Rational(0);
  return pow_rational(prime_, -valuation_);
}

Rational PAdicNumber::truncated() const {
  BigInt acc = 0;
  for (auto it = digits_.rbegin(); it != digits_.rend(); ++it) acc = acc * prime_ + *it;
  return Rational(acc) * pow_rational(prime_, valuation_);
}

Rational PAdicBall::measure() const { return pow_rational(prime, -level); }

Complex additive_character(long p, const Rational& xi) {
  const Rational frac = fractional_part(xi, p);
  // frac has a power-of-p denominator; reduce the phase exactly before
  // converting so large denominators do not lose the leading digits.
  const double phase = static_cast<double>(frac);
  return std::polar(1.0, kTwoPi * phase);
}

int indicator_ball(const PAdicBall& ball, const PAdicNumber& xi) {
  require(ball.prime == xi.prime() && ball.center.prime() == xi.prime(),
          "indicator_ball: prime mismatch");
  // |xi - c| <= p^{-k}  <=>  xi = c mod p^k: digits through exponent k-1 decide it.
  require(xi.known_through() >= ball.level && ball.center.known_through() >= ball.level,
          "indicator_ball: insufficient digit precision to resolve level " +
              std::to_string(ball.level));
  const Rational diff = xi.truncated() - ball.center.truncated();
  if (diff == 0) return 1;
  return valuation(diff, xi.prime()) >= ball.level ? 1 : 0;
}

ShellSum haar_integrate_norm_power(long p, Complex s, int shells) {
  require_prime(p);
  require(s.real() > 0, "haar_integrate_norm_power: Re(s) <= 0 diverges");
  require(shells >= 1, "haar_integrate_norm_power: need at least one shell");
  const double w = 1.0 - 1.0 / p;
  const Complex ratio = std::pow(Complex(p), -s);
  std::vector<Complex> terms;
  terms.reserve(shells);
  Complex pk = ratio;
  for (int k = 1; k <= shells; ++k) {
    terms.push_back(w * pk);
    pk *= ratio;
  }
  ShellSum out;
  out.value = pairwise_sum(terms);
  const double r = std::abs(ratio);
  out.tail_bound = w * std::pow(r, shells + 1) / (1.0 - r);
  out.closed_form = haar_norm_power_closed_form(p, s, Region::OpenUnitBall);
  return out;
}

ExactShellSum haar_integrate_norm_power_exact(long p, long s, int shells) {
  require_prime(p);
  require(s >= 1, "haar_integrate_norm_power_exact: need integer s >= 1");
  require(shells >= 1, "haar_integrate_norm_power_exact: need at least one shell");
  const Rational w = Rational(p - 1, p);
  const Rational ratio = pow_rational(p, -s);
  ExactShellSum out;
  Rational pk = ratio;
  for (int k = 1; k <= shells; ++k) {
    out.value += w * pk;
    pk *= ratio;
  }
  // pk now equals ratio^{K+1}
  out.tail_bound = w * pk / (Rational(1) - ratio);
  out.closed_form = w * ratio / (Rational(1) - ratio);
  return out;
}

Complex haar_norm_power_closed_form(long p, Complex s, Region region) {
  require_prime(p);
  const double w = 1.0 - 1.0 / p;
  switch (region) {
    case Region::OpenUnitBall: {
      require(s.real() > 0, "integral over |xi|_p < 1 needs Re(s) > 0");
      const Complex ps = std::pow(Complex(p), -s);
      return w * ps / (1.0 - ps);
    }
    case Region::UnitGroup:
      return Complex(w, 0.0);
  }
  return {};
}

Complex integrate_locally_constant(long p, long radius_exp, long level,
                                   const std::function<Complex(long long)>& f) {
  require_prime(p);
  const long cells_exp = radius_exp + level;
  require(cells_exp >= 0, "integrate_locally_constant: level coarser than the domain");
  const double cells = std::pow(static_cast<double>(p), static_cast<double>(cells_exp));
  require(cells < 4.0e9, "integrate_locally_constant: too many cosets");
  const long long n = static_cast<long long>(std::llround(cells));
  std::vector<Complex> values(static_cast<std::size_t>(n));
  for (long long a = 0; a < n; ++a) values[static_cast<std::size_t>(a)] = f(a);
  const double weight = std::pow(static_cast<double>(p), -static_cast<double>(level));
  return weight * pairwise_sum(values);
}

}  // namespace zumm::padic
