#include "zumm/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace zumm::wavelet {

namespace {

using padic::BigInt;

std::int64_t ipow64(long p, long e) {
  std::int64_t r = 1;
  for (long i = 0; i < e; ++i) {
    require(r <= std::numeric_limits<std::int64_t>::max() / p, "wavelet: coset count overflows");
    r *= p;
  }
  return r;
}

Rational pow_rational(long p, long e) {
  BigInt r = 1;
  for (long i = 0; i < std::abs(e); ++i) r *= p;
  return e >= 0 ? Rational(r) : Rational(BigInt(1), r);
}

int ord_p64(std::int64_t v, long p, int cap) {
  if (v == 0) return cap;
  int k = 0;
  while (v % p == 0 && k < cap) {
    v /= p;
    ++k;
  }
  return k;
}

// m = r / p^k in lowest terms
std::pair<std::int64_t, long> split_translation(const WaveletIndex& idx) {
  if (idx.m == 0) return {0, 0};
  const BigInt den = denominator(idx.m);
  const long k = padic::ord_p(den, idx.p);
  return {static_cast<std::int64_t>(numerator(idx.m)), k};
}

void require_same_prime(const WaveletIndex& a, const WaveletIndex& b) {
  require(a.p == b.p, "wavelet: prime mismatch");
}

}  // namespace

WaveletIndex WaveletIndex::restricted(long p, long k) {
  require(k >= 1, "restricted basis label must be >= 1");
  WaveletIndex idx;
  idx.p = p;
  idx.n = 1 - k;
  idx.m = 0;
  idx.j = 1;
  idx.validate();
  return idx;
}

void WaveletIndex::validate() const {
  require(is_prime(p), "wavelet: p must be prime");
  require(j >= 1 && j <= p - 1, "wavelet: j must lie in [1, p-1]");
  require(m >= 0 && m < 1, "wavelet: translation must lie in [0, 1)");
  if (m != 0) {
    BigInt den = denominator(m);
    while (den % p == 0) den /= p;
    require(den == 1, "wavelet: translation denominator must be a power of p");
  }
}

Complex kozyrev_eval(const WaveletIndex& idx, const Rational& xi) {
  idx.validate();
  // indicator |p^n xi - m|_p <= 1
  const Rational shifted = xi * pow_rational(idx.p, idx.n) - idx.m;
  if (shifted != 0 && padic::valuation(shifted, idx.p) < 0) return 0.0;
  const Rational arg = Rational(idx.j) * pow_rational(idx.p, idx.n - 1) * xi;
  const double modulus = std::pow(static_cast<double>(idx.p), -0.5 * static_cast<double>(idx.n));
  return modulus * padic::additive_character(idx.p, arg);
}

Complex kozyrev_eval(const WaveletIndex& idx, const PAdicNumber& xi) {
  require(idx.p == xi.prime(), "kozyrev_eval: prime mismatch");
  require(xi.known_through() >= idx.constancy_level(),
          "kozyrev_eval: point carries digits through p^" + std::to_string(xi.known_through() - 1) +
              ", scale needs p^" + std::to_string(idx.constancy_level() - 1));
  return kozyrev_eval(idx, xi.truncated());
}

namespace {

// Integral of g over the ball c + p^{-e} Z_p at coset level K (K >= -e).
Complex integrate_ball(const Rational& center, long e, long p, long level,
                       const std::function<Complex(const Rational&)>& g) {
  const long cells_exp = level + e;
  require(cells_exp >= 0, "quadrature level coarser than the integration ball");
  require(cells_exp <= 26, "quadrature level too fine (more than p^26 cosets)");
  const std::int64_t cells = ipow64(p, cells_exp);
  const Rational step = pow_rational(p, -e);
  std::vector<Complex> values(static_cast<std::size_t>(cells));
  for (std::int64_t a = 0; a < cells; ++a)
    values[static_cast<std::size_t>(a)] = g(center + Rational(a) * step);
  return std::pow(static_cast<double>(p), -static_cast<double>(level)) * pairwise_sum(values);
}

}  // namespace

Complex inner_product(const WaveletIndex& a, const WaveletIndex& b, long level) {
  require_same_prime(a, b);
  a.validate();
  b.validate();
  const long need = std::max(a.constancy_level(), b.constancy_level());
  require(level >= need, "inner_product: coset level " + std::to_string(level) +
                             " cannot resolve both wavelets (need >= " + std::to_string(need) + ")");
  // Supports are balls; two balls are nested or disjoint. Take the smaller one.
  const WaveletIndex& small = a.n <= b.n ? a : b;
  const WaveletIndex& big = a.n <= b.n ? b : a;
  const Rational c_small = small.m * pow_rational(small.p, -small.n);
  if (kozyrev_eval(big, c_small) == Complex(0.0)) {
    // the center of the smaller ball lies outside the larger support
    return 0.0;
  }
  // Both factors are constant at level `need`, so finer cosets add nothing.
  return integrate_ball(c_small, small.n, a.p, need, [&](const Rational& x) {
    return std::conj(kozyrev_eval(a, x)) * kozyrev_eval(b, x);
  });
}

Complex integrate(const WaveletIndex& idx, long level) {
  idx.validate();
  require(level >= idx.constancy_level(), "integrate: coset level too coarse for the wavelet");
  const Rational c = idx.m * pow_rational(idx.p, -idx.n);
  return integrate_ball(c, idx.n, idx.p, idx.constancy_level(),
                        [&](const Rational& x) { return kozyrev_eval(idx, x); });
}

VladimirovResult vladimirov_apply(const VladimirovSpec& spec, const WaveletIndex& idx) {
  idx.validate();
  const double p = static_cast<double>(idx.p);
  VladimirovResult out;
  out.eigenvalue = std::pow(Complex(p), spec.alpha * static_cast<double>(1 - idx.n));
  if (spec.mode == VladimirovMode::Spectral) return out;

  const Complex alpha = spec.alpha;
  require(alpha.real() > -1.0, "vladimirov kernel: Re(alpha) <= -1 (prefactor pole at alpha = -1)");
  require(alpha.real() > 0.0,
          "vladimirov kernel: Re(alpha) <= 0 makes the integral over |xi'| > p^B diverge");
  const long B = spec.domain_exponent;
  const long K = spec.coset_level;
  const long ell = idx.constancy_level();
  require(K >= ell, "vladimirov kernel: coset level K=" + std::to_string(K) +
                        " cannot resolve scale n=" + std::to_string(idx.n));
  const auto [m_num, m_exp] = split_translation(idx);
  // the support, radius p^n about m p^{-n}, must lie inside |xi| <= p^B
  require(idx.n + m_exp <= B && idx.n <= B,
          "vladimirov kernel: B=" + std::to_string(B) + " does not contain the wavelet support");

  // Points a p^{-B}, 0 <= a < p^{B+ell}, represent the level-ell cosets of the
  // domain. The wavelet is constant on them, so summing level-K cosets inside
  // one of them is the same as weighting its value by p^{-ell}.
  const long cells_exp = B + ell;
  require(cells_exp >= 0 && cells_exp <= 26, "vladimirov kernel: too many cosets (B + 1 - n > 26)");
  const std::int64_t cells = ipow64(idx.p, cells_exp);

  std::vector<Complex> f(static_cast<std::size_t>(cells));
  {
    // chi(j p^{n-1} a p^{-B}) with phase (j a mod p^{B+1-n}) / p^{B+1-n}
    const std::int64_t phase_den = ipow64(idx.p, B + 1 - idx.n);
    const std::int64_t ind_den = ipow64(idx.p, B - idx.n);  // p^n a p^{-B} = a / p^{B-n}
    const std::int64_t m_scale = ipow64(idx.p, B - idx.n - m_exp);
    const double modulus = std::pow(p, -0.5 * static_cast<double>(idx.n));
    for (std::int64_t a = 0; a < cells; ++a) {
      // |a/p^{B-n} - m|_p <= 1  <=>  a = m p^{B-n} (mod p^{B-n})
      const std::int64_t target = ((m_num % ind_den) * (m_scale % ind_den)) % ind_den;
      if (a % ind_den != target) continue;
      const std::int64_t ph = (static_cast<std::int64_t>(idx.j) * (a % phase_den)) % phase_den;
      f[static_cast<std::size_t>(a)] =
          modulus * std::polar(1.0, kTwoPi * static_cast<double>(ph) / static_cast<double>(phase_den));
    }
  }

  // |xi' - xi|^{-alpha-1} for |a - b|_p = p^{-v} at scale p^{-B}: p^{(B - v)(-alpha-1)}
  std::vector<Complex> kernel(static_cast<std::size_t>(cells_exp + 1));
  for (long v = 0; v <= cells_exp; ++v)
    kernel[static_cast<std::size_t>(v)] =
        std::pow(Complex(p), -(alpha + 1.0) * static_cast<double>(B - v));
  const double cell_weight = std::pow(p, -static_cast<double>(ell));
  const Complex prefactor = (1.0 - std::pow(Complex(p), alpha)) / (1.0 - std::pow(Complex(p), -alpha - 1.0));
  // -f(xi) (1 - 1/p) sum_{k > B} p^{-k alpha}
  const Complex exterior_factor = -(1.0 - 1.0 / p) * std::pow(Complex(p), -alpha * static_cast<double>(B + 1)) /
                                  (1.0 - std::pow(Complex(p), -alpha));

  // Sample points: every coset of the support plus as many just outside it.
  std::vector<std::int64_t> samples;
  for (std::int64_t a = 0; a < cells; ++a)
    if (f[static_cast<std::size_t>(a)] != Complex(0.0)) samples.push_back(a);
  const std::size_t inside = samples.size();
  for (std::int64_t a = 0; a < cells && samples.size() < 2 * inside; ++a)
    if (f[static_cast<std::size_t>(a)] == Complex(0.0)) samples.push_back(a);

  double max_eig = 0.0, max_dev = 0.0, max_tail = 0.0;
  std::vector<Complex> terms(static_cast<std::size_t>(cells));
  for (const auto b : samples) {
    const Complex fb = f[static_cast<std::size_t>(b)];
    for (std::int64_t a = 0; a < cells; ++a) {
      if (a == b) {
        terms[static_cast<std::size_t>(a)] = 0.0;
        continue;
      }
      const int v = ord_p64(a - b, idx.p, static_cast<int>(cells_exp));
      terms[static_cast<std::size_t>(a)] =
          (f[static_cast<std::size_t>(a)] - fb) * kernel[static_cast<std::size_t>(v)];
    }
    const Complex tail = prefactor * exterior_factor * fb;
    Complex value = prefactor * cell_weight * pairwise_sum(terms);
    if (spec.exterior_closed_form) value += tail;
    const Complex expected = out.eigenvalue * fb;
    max_eig = std::max(max_eig, std::abs(expected));
    max_dev = std::max(max_dev, std::abs(value - expected));
    max_tail = std::max(max_tail, std::abs(tail));
  }
  if (max_eig == 0.0) throw NumericError("vladimirov kernel: wavelet vanished on every sample point");
  out.residual = max_dev / max_eig;
  out.exterior_tail = max_tail / max_eig;
  out.sample_points = static_cast<int>(samples.size());
  return out;
}

WaveletState basis_state(long p, long k) {
  require(k >= 1, "basis_state: label must be >= 1");
  WaveletState s;
  s.p = p;
  s.coeffs[k] = 1.0;
  return s;
}

WaveletState ladder_apply(LadderOp op, const WaveletState& state) {
  WaveletState out;
  out.p = state.p;
  auto add = [&](long k, Complex c) {
    if (c == Complex(0.0)) return;
    auto& target = k >= 1 ? out.coeffs : out.outside;
    target[k] += c;
    if (target[k] == Complex(0.0)) target.erase(k);
  };
  auto apply_one = [&](long k, Complex c) {
    const double kk = static_cast<double>(k);
    switch (op) {
      case LadderOp::JPlus: add(k + 1, kk * c); break;
      case LadderOp::JMinus: add(k - 1, -kk * c); break;
      case LadderOp::LogD: add(k, kk * c); break;
    }
  };
  for (const auto& [k, c] : state.coeffs) apply_one(k, c);
  for (const auto& [k, c] : state.outside) apply_one(k, c);
  return out;
}

WaveletState ladder_commutator(LadderOp a, LadderOp b, const WaveletState& state) {
  const WaveletState ab = ladder_apply(a, ladder_apply(b, state));
  const WaveletState ba = ladder_apply(b, ladder_apply(a, state));
  WaveletState out = ab;
  for (const auto& [k, c] : ba.coeffs) {
    out.coeffs[k] -= c;
    if (out.coeffs[k] == Complex(0.0)) out.coeffs.erase(k);
  }
  for (const auto& [k, c] : ba.outside) {
    out.outside[k] -= c;
    if (out.outside[k] == Complex(0.0)) out.outside.erase(k);
  }
  return out;
}

}  // namespace zumm::wavelet
