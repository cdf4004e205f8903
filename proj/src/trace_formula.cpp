#include "zumm/trace_formula.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

#include "zumm/special.hpp"

namespace zumm {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 61>;

constexpr double kEps = std::numeric_limits<double>::epsilon();
// psi(x) < 1.03883 x for all x > 0.
constexpr double kPsiSlope = 1.04;

double integrate(const std::function<double(double)>& f, double a, double b, double* err = nullptr,
                 double* l1 = nullptr) {
  return GK::integrate(f, a, b, 15, 1e-15, err, l1);
}

void require_tails(const TestFunctionPair& pair) {
  if (!pair.g || !pair.h || !pair.h_imag)
    throw ValidationError("test function pair '" + pair.name + "': g, h and h_imag are required");
  if (!pair.g_weighted_tail || !pair.h_tail || !pair.h_moment_tail)
    throw NumericError("test function pair '" + pair.name +
                       "': no tail majorant supplied, truncation cannot be bounded");
  require(pair.width > 0, "test function pair: width must be positive");
}

double finite_or_throw(double v, const std::string& what) {
  if (!std::isfinite(v)) throw NumericError(what + " is not finite");
  return v;
}

// Smallest cutoff on the grid start, start+step, ... with tail(cutoff) < target.
double cutoff_for(const std::function<double(double)>& tail, double start, double step,
                  double target, const std::string& what) {
  for (int k = 0; k < 400; ++k) {
    const double c = start + k * step;
    if (finite_or_throw(tail(c), what) < target) return c;
  }
  throw NumericError(what + " does not fall below " + std::to_string(target));
}

}  // namespace

TestFunctionPair TestFunctionPair::gaussian(double a) {
  require(a > 0 && std::isfinite(a), "gaussian test function: width must be positive");
  TestFunctionPair p;
  p.name = "gaussian";
  p.width = a;
  const double amp = a * std::sqrt(kTwoPi);
  p.g = [a](double q) { return std::exp(-q * q / (2 * a * a)); };
  p.h = [a, amp](double u) { return amp * std::exp(-a * a * u * u / 2); };
  p.h_imag = [a, amp](double y) { return amp * std::exp(a * a * y * y / 2); };
  // int_Q^inf exp(q/2 - q^2/2a^2) dq, completing the square around q = a^2/2.
  p.g_weighted_tail = [a](double Q) {
    return std::exp(a * a / 8) * a * std::sqrt(kPi / 2) * std::erfc((Q - a * a / 2) / (a * std::sqrt(2.0)));
  };
  p.h_tail = [a](double U) { return kPi * std::erfc(a * U / std::sqrt(2.0)); };
  p.h_moment_tail = [a](double U) { return std::sqrt(kTwoPi) / a * std::exp(-a * a * U * U / 2); };
  return p;
}

TransformSelfTest transform_self_test(const TestFunctionPair& pair, double tolerance) {
  require_tails(pair);
  TransformSelfTest st;
  st.tolerance = tolerance;
  const double w = pair.width;
  const double Q = cutoff_for(pair.g_weighted_tail, 4 * w, w, 1e-15, "g tail");
  const double U = cutoff_for(pair.h_tail, 4 / w, 1 / w, 1e-15, "h tail");
  for (int k = 0; k <= 40; ++k) {
    const double u = 6.0 / w * k / 40.0;
    const double num = 2 * integrate([&](double q) { return pair.g(q) * std::cos(q * u); }, 0, Q);
    const double ref = pair.h(u);
    st.max_h_error = std::max(st.max_h_error, std::abs(num - ref) / std::max(1.0, std::abs(ref)));
  }
  for (int k = 0; k <= 40; ++k) {
    const double q = 4.0 * w * k / 40.0;
    const double num = 2 * integrate([&](double u) { return pair.h(u) * std::cos(q * u); }, 0, U);
    const double ref = kTwoPi * pair.g(-q);
    st.max_double_error = std::max(st.max_double_error, std::abs(num - ref) / std::max(1.0, std::abs(ref)));
  }
  st.passed = st.max_h_error < tolerance && st.max_double_error < tolerance;
  return st;
}

double zero_count_upper(double t) {
  require(t >= std::exp(1.0), "zero_count_upper: needs t >= e");
  return smooth_zero_count(t) + 0.112 * std::log(t) + 0.278 * std::log(std::log(t)) + 2.51 + 0.2 / t;
}

double digamma_envelope(double u) { return std::log1p(u) + 5.0; }

PrimePowerComb prime_power_comb_upto(std::int64_t x_max, double mu) {
  require(x_max >= 1, "prime_power_comb_upto: x_max must be >= 1");
  require(std::isfinite(mu), "prime_power_comb_upto: mu must be finite");
  PrimePowerComb comb;
  comb.mu = mu;
  comb.q_max = std::log(double(x_max));
  PrimeTable table(x_max);
  comb.teeth.reserve(table.prime_powers().size());
  for (const auto& pp : table.prime_powers()) {
    const double q = pp.exponent * pp.log_prime;
    comb.teeth.push_back({q, pp.log_prime * std::exp(-mu * q), pp.prime, pp.exponent});
  }
  std::sort(comb.teeth.begin(), comb.teeth.end(),
            [](const CombTooth& a, const CombTooth& b) { return a.q < b.q; });
  return comb;
}

PrimePowerComb wigner_marginal_comb(std::int64_t prime, std::optional<double> mu, double q_max) {
  require(q_max > 0 && std::isfinite(q_max), "wigner_marginal_comb: q_max must be positive");
  if (mu) require(std::isfinite(*mu), "wigner_marginal_comb: mu must be finite");
  if (prime == 0) {
    require(q_max <= std::log(4.0e9), "wigner_marginal_comb: q_max too large for the sieve (e^q_max > 4e9)");
    auto comb = prime_power_comb_upto(static_cast<std::int64_t>(std::floor(std::exp(q_max))), mu.value_or(0.0));
    std::erase_if(comb.teeth, [&](const CombTooth& t) { return t.q > q_max; });
    comb.mu = mu;
    comb.q_max = q_max;
    return comb;
  }
  require(is_prime(prime), "wigner_marginal_comb: p must be prime (got " + std::to_string(prime) + ")");
  PrimePowerComb comb;
  comb.prime = prime;
  comb.mu = mu;
  comb.q_max = q_max;
  const double lp = std::log(double(prime));
  comb.position_period = kTwoPi / lp;
  for (int n = 1; n * lp <= q_max; ++n) {
    const double q = n * lp;
    comb.teeth.push_back({q, mu ? lp * std::exp(-*mu * q) : lp, prime, n});
  }
  return comb;
}

TraceReport trace_formula_check(const TestFunctionPair& pair, const ZeroTable& zeros,
                                const PrimeTable& primes) {
  require_tails(pair);
  require(pair.width >= 0.5 && pair.width <= 3.0,
          "trace_formula_check: width must lie in [0.5, 3] (got " + std::to_string(pair.width) + ")");
  require(zeros.size() >= 50, "trace_formula_check: needs at least 50 zeros (got " +
                                  std::to_string(zeros.size()) + ")");
  require(primes.limit() >= 2, "trace_formula_check: prime table limit must be >= 2");

  TraceReport rep;
  rep.pair = pair.name;
  rep.width = pair.width;
  rep.n_zeros = zeros.size();
  rep.prime_max = primes.limit();
  rep.self_test = transform_self_test(pair);
  if (!rep.self_test.passed)
    throw NumericError("trace_formula_check: transform self-test failed (h error " +
                       std::to_string(rep.self_test.max_h_error) + ", inverse error " +
                       std::to_string(rep.self_test.max_double_error) + ")");
  const double w = pair.width;
  double abs_sum = 0;

  rep.h_half_closed = pair.h_imag(0.5);
  rep.pole_terms = pair.h_imag(0.5) + pair.h_imag(-0.5);
  {
    const double Q = cutoff_for(pair.g_weighted_tail, 4 * w, w, 1e-15, "g tail");
    rep.h_half_quadrature = integrate([&](double q) { return pair.g(q) * std::exp(-q / 2); }, -Q, Q);
  }
  abs_sum += std::abs(rep.pole_terms);

  std::vector<double> zterms(zeros.size());
  for (std::size_t i = 0; i < zeros.size(); ++i) zterms[i] = -2.0 * pair.h(zeros.t[i]);
  rep.zero_sum = pairwise_sum(zterms);
  for (double z : zterms) abs_sum += std::abs(z);

  // (1/2pi) int_{-U}^{U} = (1/pi) int_0^U by evenness.
  auto integral_tail = [&](double U) {
    return (digamma_envelope(U) * pair.h_tail(U) + pair.h_moment_tail(U) / (1 + U)) / kPi;
  };
  rep.integral_cutoff = cutoff_for(integral_tail, 8 / w, 1 / w, 1e-12, "digamma integral tail");
  rep.integral_tail_bound = integral_tail(rep.integral_cutoff);
  double qerr = 0, l1 = 0;
  rep.digamma_integral =
      integrate([&](double u) { return pair.h(u) * special::digamma(Complex(0.25, u / 2)).real(); }, 0,
                rep.integral_cutoff, &qerr, &l1) /
      kPi;
  rep.quadrature_error = qerr / kPi;
  abs_sum += l1 / kPi;
  rep.lhs = rep.pole_terms + rep.zero_sum + rep.digamma_integral;

  rep.log_pi_term = pair.g(0) * std::log(kPi);
  abs_sum += std::abs(rep.log_pi_term);
  const auto comb = prime_power_comb_upto(primes.limit(), 0.5);
  std::vector<double> pterms(comb.teeth.size());
  for (std::size_t i = 0; i < comb.teeth.size(); ++i) pterms[i] = 2.0 * comb.teeth[i].weight * pair.g(comb.teeth[i].q);
  rep.prime_sum = pairwise_sum(pterms);
  for (double p : pterms) abs_sum += std::abs(p);
  rep.rhs = rep.log_pi_term + rep.prime_sum;

  // Sum over n > X of Lambda(n) f(n), f(x) = x^{-1/2} |g(ln x)| decreasing:
  // Stieltjes with psi(x) <= 1.04 x gives 1.04 (X f(X) + int_X^inf f).
  const double X = double(primes.limit());
  const double lnX = std::log(X);
  rep.prime_tail_bound =
      finite_or_throw(2 * kPsiSlope * (X * std::abs(pair.g(lnX)) / std::sqrt(X) + pair.g_weighted_tail(lnX)),
                      "prime tail bound");

  // Zeros above T = t_n, by parts against the upper count N+(t), with
  // N+'(t) <= ln(t/2pi)/2pi + 0.5/t and ln(t/2pi) <= ln(T/2pi) + t/T.
  const double T = zeros.t.back();
  const double n = double(zeros.size());
  const double count_excess = std::max(0.0, zero_count_upper(T) - n);
  rep.zero_tail_bound = finite_or_throw(
      2 * (count_excess * std::abs(pair.h(T)) +
           (std::log(T / kTwoPi) / kTwoPi + 0.5 / T) * pair.h_tail(T) + pair.h_moment_tail(T) / (kTwoPi * T)),
      "zero tail bound");

  rep.rounding_bound = 64 * kEps * abs_sum;
  rep.total_bound = rep.zero_tail_bound + rep.prime_tail_bound + rep.integral_tail_bound +
                    rep.quadrature_error + rep.rounding_bound;
  rep.residual = rep.lhs - rep.rhs;
  rep.within_bound = std::abs(rep.residual) <= rep.total_bound;
  return rep;
}

}  // namespace zumm
