#include "zumm/counting.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>

#include "zumm/primes.hpp"
#include "zumm/special.hpp"

namespace zumm {

namespace {

void require_x(double x) { require(x > 1.0 && std::isfinite(x), "counting: need x > 1"); }

// Sum of weight(pp) over prime powers below x, half weight at x itself.
template <typename F>
double prime_power_sum(double x, F weight) {
  require_x(x);
  const auto limit = static_cast<std::int64_t>(std::floor(x));
  if (limit < 2) return 0.0;
  PrimeTable table(limit);
  const bool integral = std::floor(x) == x;
  std::vector<double> terms;
  terms.reserve(table.prime_powers().size());
  for (const auto& pp : table.prime_powers()) {
    const double w = weight(pp);
    terms.push_back(integral && pp.value == limit ? 0.5 * w : w);
  }
  return pairwise_sum(terms);
}

void require_zeros(const ZeroTable& zeros, std::size_t n) {
  require(n > 0, "explicit mode needs at least one zero");
  require(n <= zeros.size(), "explicit mode: " + std::to_string(n) + " zeros requested, table has " +
                                 std::to_string(zeros.size()));
}

}  // namespace

double psi_direct(double x) {
  return prime_power_sum(x, [](const PrimePower& pp) { return pp.log_prime; });
}

double j_direct(double x) {
  return prime_power_sum(x, [](const PrimePower& pp) { return 1.0 / pp.exponent; });
}

double j_local_direct(long p, double x) {
  require_x(x);
  require(is_prime(p), "j_local: p must be prime");
  double count = 0.0;
  double v = static_cast<double>(p);
  while (v <= x) {
    count += (v == x) ? 0.5 : 1.0;
    v *= static_cast<double>(p);
  }
  return count;
}

CountingValue psi_explicit(double x, const ZeroTable& zeros, std::size_t n_zeros) {
  require_x(x);
  require_zeros(zeros, n_zeros);
  const double lx = std::log(x);
  std::vector<double> terms(n_zeros);
  for (std::size_t m = 0; m < n_zeros; ++m) {
    const Complex rho(0.5, zeros.t[m]);
    terms[m] = 2.0 * (std::exp(rho * lx) / rho).real();
  }
  CountingValue out;
  out.value = x - pairwise_sum(terms) - std::log(kTwoPi) - 0.5 * std::log1p(-1.0 / (x * x));
  const double t_next = zeros.t[n_zeros - 1];
  out.tail_estimate = 2.0 * std::sqrt(x) / std::abs(Complex(0.5, t_next));
  out.terms = n_zeros;
  return out;
}

CountingValue j_explicit(double x, const ZeroTable& zeros, std::size_t n_zeros) {
  require_x(x);
  require_zeros(zeros, n_zeros);
  const double lx = std::log(x);
  std::vector<double> terms(n_zeros);
  for (std::size_t m = 0; m < n_zeros; ++m) {
    const Complex rho(0.5, zeros.t[m]);
    terms[m] = 2.0 * special::expint_ei(rho * lx).real();
  }
  boost::math::quadrature::exp_sinh<double> integrator;
  // substitute t = x + v so the integrand has no endpoint issue at x
  auto f = [x](double v) {
    const double t = x + v;
    return 1.0 / (t * (t * t - 1.0) * std::log(t));
  };
  const double tail_integral = integrator.integrate(f);
  CountingValue out;
  out.value = special::expint_ei(Complex(lx)).real() - pairwise_sum(terms) - std::log(2.0) +
              tail_integral;
  const Complex rho_last(0.5, zeros.t[n_zeros - 1]);
  out.tail_estimate = 2.0 * std::sqrt(x) / (std::abs(rho_last) * lx);
  out.terms = n_zeros;
  return out;
}

CountingValue j_local_explicit(long p, double x, std::size_t n_poles) {
  require_x(x);
  require(is_prime(p), "j_local: p must be prime");
  require(n_poles > 0, "explicit mode needs at least one pole pair");
  const double u = std::log(x) / std::log(static_cast<double>(p));
  std::vector<double> terms(n_poles);
  for (std::size_t k = 1; k <= n_poles; ++k)
    terms[k - 1] = std::sin(kTwoPi * static_cast<double>(k) * u) / (kPi * static_cast<double>(k));
  CountingValue out;
  out.value = u - 0.5 + pairwise_sum(terms);
  const double s = std::abs(std::sin(kPi * u));
  out.tail_estimate = s > 0 ? 1.0 / (kPi * static_cast<double>(n_poles + 1) * s) : 0.0;
  out.terms = n_poles;
  return out;
}

}  // namespace zumm
