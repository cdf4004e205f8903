#pragma once

// Complex special functions on a templated real type. double is the default
// precision; the contour code instantiates long double so the r^{-n}
// amplification of Taylor extraction stays below the quoted tolerances.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "zumm/common.hpp"

namespace zumm::special {

/// B_{2k} for k = 0..14.
inline constexpr std::array<long double, 15> kBernoulli2k = {
    1.0L,
    1.0L / 6.0L,
    -1.0L / 30.0L,
    1.0L / 42.0L,
    -1.0L / 30.0L,
    5.0L / 66.0L,
    -691.0L / 2730.0L,
    7.0L / 6.0L,
    -3617.0L / 510.0L,
    43867.0L / 798.0L,
    -174611.0L / 330.0L,
    854513.0L / 138.0L,
    -236364091.0L / 2730.0L,
    8553103.0L / 6.0L,
    -23749461029.0L / 870.0L,
};

namespace detail {

template <typename T>
constexpr T pi() {
  return std::numbers::pi_v<T>;
}

template <typename T>
T factorial(int n) {
  T r = 1;
  for (int i = 2; i <= n; ++i) r *= T(i);
  return r;
}

inline constexpr double kShiftRadius = 16.0;

}  // namespace detail

/// Principal-sheet log Gamma for Re(z) > 0, continuous in z there.
template <typename T>
std::complex<T> log_gamma(std::complex<T> z) {
  using C = std::complex<T>;
  require(z.real() > 0, "log_gamma: needs Re(z) > 0");
  C shift_sum = 0;
  while (std::abs(z) < T(detail::kShiftRadius)) {
    shift_sum += std::log(z);
    z += T(1);
  }
  const C inv = T(1) / z;
  const C inv2 = inv * inv;
  C series = 0;
  C pw = inv;
  for (int k = 1; k <= 10; ++k) {
    series += T(kBernoulli2k[k]) / T((2 * k) * (2 * k - 1)) * pw;
    pw *= inv2;
  }
  const T half_log_2pi = T(0.5) * std::log(T(2) * detail::pi<T>());
  return (z - T(0.5)) * std::log(z) - z + half_log_2pi + series - shift_sum;
}

/// Gamma(z) everywhere off the non-positive integers.
template <typename T>
std::complex<T> gamma(std::complex<T> z) {
  using C = std::complex<T>;
  if (z.real() >= T(0.5)) return std::exp(log_gamma(z));
  if (z.imag() == 0 && z.real() == std::round(z.real()))
    throw PoleError("gamma: pole at non-positive integer", static_cast<long>(z.real()));
  const C s = std::sin(detail::pi<T>() * z);
  return detail::pi<T>() / (s * std::exp(log_gamma(C(1) - z)));
}

/// Digamma psi(z) = Gamma'(z)/Gamma(z).
template <typename T>
std::complex<T> digamma(std::complex<T> z) {
  using C = std::complex<T>;
  if (z.real() < T(0.5)) {
    if (z.imag() == 0 && z.real() == std::round(z.real()))
      throw PoleError("digamma: pole at non-positive integer", static_cast<long>(z.real()));
    // cot(pi z) through exp(+-2 i pi z), which stays finite for large |Im z|
    const C pz = detail::pi<T>() * z;
    const C i(0, 1);
    const C cot = pz.imag() > 0 ? i * (std::exp(T(2) * i * pz) + T(1)) / (std::exp(T(2) * i * pz) - T(1))
                                : i * (T(1) + std::exp(T(-2) * i * pz)) / (T(1) - std::exp(T(-2) * i * pz));
    return digamma(C(1) - z) - detail::pi<T>() * cot;
  }
  C acc = 0;
  while (std::abs(z) < T(detail::kShiftRadius)) {
    acc -= T(1) / z;
    z += T(1);
  }
  const C inv = T(1) / z;
  const C inv2 = inv * inv;
  C series = 0;
  C pw = inv2;
  for (int k = 1; k <= 10; ++k) {
    series += T(kBernoulli2k[k]) / T(2 * k) * pw;
    pw *= inv2;
  }
  return acc + std::log(z) - T(0.5) * inv - series;
}

template <typename T>
struct ZetaResult {
  std::complex<T> value;
  T error;
};

/// Number of direct terms used by default: max(20, ceil|Im s| + 20).
inline int default_zeta_terms(double imag) {
  return std::max(20, static_cast<int>(std::ceil(std::abs(imag))) + 20);
}

inline constexpr int kDefaultBernoulliOrder = 12;

/// Euler-Maclaurin pieces of (s-1) zeta(s) and its s-derivative, valid for
/// Re(s) > 1 - 2M. The (s-1) factor is carried through every term so the pole
/// at s = 1 never appears.
template <typename T>
struct EulerMaclaurin {
  std::complex<T> f;       ///< (s-1) zeta(s)
  std::complex<T> df;      ///< d/ds [(s-1) zeta(s)]
  T error;                 ///< size of the first omitted correction, times |s-1|
};

template <typename T>
EulerMaclaurin<T> euler_maclaurin(std::complex<T> s, int n_terms, int order, bool with_derivative) {
  using C = std::complex<T>;
  require(n_terms >= 2, "zeta: need at least 2 direct terms");
  require(order >= 1 && order <= 13, "zeta: Bernoulli order must be in [1, 13]");
  const T N = T(n_terms);
  const T lnN = std::log(N);
  const C sm1 = s - T(1);

  C head = 0, dhead = 0;
  for (int n = n_terms - 1; n >= 1; --n) {
    const T ln_n = std::log(T(n));
    const C t = std::exp(-s * ln_n);
    head += t;
    if (with_derivative) dhead -= ln_n * t;
  }
  const C Ns = std::exp(-s * lnN);  // N^{-s}
  // (s-1) zeta = (s-1) head + N^{1-s} + (s-1)(N^{-s}/2 + sum_k T_k)
  C tail = T(0.5) * Ns;
  C dtail = -T(0.5) * lnN * Ns;
  C poch = s;          // s (s+1) ... (s+2k-2)
  C dpoch = 1;
  C pw = Ns / N;       // N^{-s-2k+1}
  T omitted = 0;
  for (int k = 1; k <= order + 1; ++k) {
    const T coef = T(kBernoulli2k[k]) / detail::factorial<T>(2 * k);
    const C term = coef * poch * pw;
    if (k == order + 1) {
      omitted = std::abs(term) * std::abs(s + T(2 * k - 1)) / std::max(s.real() + T(2 * k - 1), T(1));
      break;
    }
    tail += term;
    if (with_derivative) dtail += coef * (dpoch * pw - lnN * poch * pw);
    // advance to k+1: multiply by (s+2k-1)(s+2k)
    const C a = s + T(2 * k - 1);
    const C b = s + T(2 * k);
    dpoch = dpoch * a * b + poch * (a + b);
    poch = poch * a * b;
    pw /= N * N;
  }
  EulerMaclaurin<T> out;
  const C NN = N * Ns;  // N^{1-s}
  out.f = sm1 * (head + tail) + NN;
  out.df = with_derivative ? (head + tail) + sm1 * (dhead + dtail) - lnN * NN : C(0);
  out.error = std::abs(sm1) * omitted;
  return out;
}

/// (s-1) zeta(s), an entire function; reflection for Re(s) < 0.
template <typename T>
ZetaResult<T> zeta_times_pole(std::complex<T> s, int n_terms = 0,
                              int order = kDefaultBernoulliOrder) {
  using C = std::complex<T>;
  if (n_terms <= 0) n_terms = default_zeta_terms(static_cast<double>(s.imag()));
  if (s.real() >= 0) {
    auto em = euler_maclaurin<T>(s, n_terms, order, false);
    return {em.f, em.error};
  }
  // zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s)
  const C one_minus_s = C(1) - s;
  auto em = euler_maclaurin<T>(one_minus_s, n_terms, order, false);
  const C zeta_reflected = em.f / (one_minus_s - T(1));  // 1-s has Re > 1, no pole
  const T pi = detail::pi<T>();
  const C factor = std::pow(C(2), s) * std::pow(C(pi), s - T(1)) * std::sin(pi * s / T(2)) *
                   gamma(one_minus_s);
  const C sm1 = s - T(1);
  return {sm1 * factor * zeta_reflected, std::abs(sm1 * factor) * em.error / std::abs(s)};
}

/// zeta(s) with an error estimate. Throws PoleError at s = 1.
template <typename T>
ZetaResult<T> zeta(std::complex<T> s, int n_terms = 0, int order = kDefaultBernoulliOrder) {
  if (s == std::complex<T>(1)) throw PoleError("zeta: pole at s = 1", 0);
  auto r = zeta_times_pole<T>(s, n_terms, order);
  const T d = std::abs(s - T(1));
  return {r.value / (s - T(1)), r.error / d};
}

/// zeta'(s)/zeta(s) for Re(s) >= 0, s != 1, from the differentiated expansion.
template <typename T>
std::complex<T> zeta_log_derivative(std::complex<T> s) {
  require(s.real() >= 0, "zeta_log_derivative: needs Re(s) >= 0");
  if (s == std::complex<T>(1)) throw PoleError("zeta_log_derivative: pole at s = 1", 0);
  auto em = euler_maclaurin<T>(s, default_zeta_terms(static_cast<double>(s.imag())),
                               kDefaultBernoulliOrder, true);
  // f = (s-1) zeta  =>  zeta'/zeta = f'/f - 1/(s-1)
  return em.df / em.f - T(1) / (s - T(1));
}

/// Archimedean factor zeta_R(s) = pi^{-s/2} Gamma(s/2).
template <typename T>
std::complex<T> zeta_real_place(std::complex<T> s) {
  const T pi = detail::pi<T>();
  return std::exp(-s / T(2) * std::log(pi)) * gamma(s / T(2));
}

/// ln zeta_R(s) on Re(s) > 0, analytic (no principal-branch jumps).
template <typename T>
std::complex<T> log_zeta_real_place(std::complex<T> s) {
  return -s / T(2) * std::log(detail::pi<T>()) + log_gamma(s / T(2));
}

/// xi(s) = (1/2) pi^{-s/2} s (s-1) Gamma(s/2) zeta(s), evaluated as
/// pi^{-s/2} Gamma(1 + s/2) (s-1) zeta(s).
template <typename T>
std::complex<T> xi(std::complex<T> s) {
  using C = std::complex<T>;
  const T pi = detail::pi<T>();
  const C g = gamma(C(1) + s / T(2));
  return std::exp(-s / T(2) * std::log(pi)) * g * zeta_times_pole<T>(s).value;
}

/// ln xi(s) = ln(1/2) + ln s + ln((s-1) zeta(s)) + ln zeta_R(s), principal
/// logs for the first three factors. Callers on a closed contour unwrap the
/// result; the sum is then single-valued wherever xi has no zeros inside.
template <typename T>
std::complex<T> log_xi(std::complex<T> s) {
  return std::log(T(0.5)) + std::log(s) + std::log(zeta_times_pole<T>(s).value) +
         log_zeta_real_place(s);
}

/// Local Euler factor 1/(1 - p^{-s}).
Complex zeta_local(long p, Complex s);

/// Index n of the pole s = 2 pi i n / ln p nearest to s.
long local_pole_index(long p, Complex s);

/// Exponential integral Ei(w) = gamma + ln w + sum w^k/(k k!), principal log.
Complex expint_ei(Complex w);

}  // namespace zumm::special
