#include "zumm/li.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>

#include "zumm/contour.hpp"
#include "zumm/special.hpp"

namespace zumm {

namespace {

// Taylor coefficients c_0..c_n of ln xi about s = 1.
std::vector<ComplexL> log_xi_taylor(int n_max, long double radius, int nodes,
                                    const Parallelism& par) {
  auto samples = contour::sample_circle(
      [](ComplexL s) { return special::log_xi<long double>(s); }, ComplexL(1), radius, nodes, par);
  contour::unwrap_log(samples, 0);
  return contour::coefficients(samples, radius, n_max);
}

std::vector<double> lambdas_from_taylor(const std::vector<ComplexL>& c, int n_max) {
  std::vector<double> out(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    long double acc = 0.0L;
    long double binom = 1.0L;  // C(n-1, j)
    for (int j = 0; j <= n - 1; ++j) {
      acc += binom * c[static_cast<std::size_t>(n - j)].real();
      binom = binom * static_cast<long double>(n - 1 - j) / static_cast<long double>(j + 1);
    }
    out[static_cast<std::size_t>(n - 1)] = static_cast<double>(n * acc);
  }
  return out;
}

}  // namespace

LiSeries li_cauchy(int n_max, double radius, int nodes, const Parallelism& par) {
  require(n_max >= 1, "li_cauchy: n_max must be >= 1");
  require(radius > 0 && radius < 0.5, "li_cauchy: radius must lie in (0, 1/2)");
  require(contour::is_power_of_two(nodes) && nodes >= 64, "li_cauchy: nodes must be a power of two >= 64");
  const auto c = log_xi_taylor(n_max, radius, nodes, par);
  const auto c2 = log_xi_taylor(n_max, 0.75L * radius, nodes, par);
  auto samples_half = contour::sample_circle(
      [](ComplexL s) { return special::log_xi<long double>(s); }, ComplexL(1), radius, nodes, par);
  contour::unwrap_log(samples_half, 0);
  const auto c_half = contour::coefficients(samples_half, radius, n_max, 2);

  LiSeries out;
  out.lambda = lambdas_from_taylor(c, n_max);
  const auto l2 = lambdas_from_taylor(c2, n_max);
  const auto lh = lambdas_from_taylor(c_half, n_max);
  out.error.resize(out.lambda.size());
  for (std::size_t i = 0; i < out.lambda.size(); ++i)
    out.error[i] = std::max(std::abs(out.lambda[i] - l2[i]), std::abs(out.lambda[i] - lh[i]));
  out.radius = radius;
  out.nodes = nodes;
  return out;
}

LiSeries li_zero_sum(int n_max, const ZeroTable& zeros, std::size_t n_zeros, bool tail_correction) {
  require(n_max >= 1, "li_zero_sum: n_max must be >= 1");
  require(n_zeros > 0, "li_zero_sum: the zero sum needs at least one zero");
  require(n_zeros <= zeros.size(), "li_zero_sum: " + std::to_string(n_zeros) +
                                       " zeros requested, table has " + std::to_string(zeros.size()));
  LiSeries out;
  out.lambda.assign(static_cast<std::size_t>(n_max), 0.0);
  out.error.assign(static_cast<std::size_t>(n_max), 0.0);
  out.zeros_used = n_zeros;

  auto term = [](Complex rho, int n) { return 2.0 * (1.0 - std::pow(1.0 - 1.0 / rho, n)).real(); };

  for (int n = 1; n <= n_max; ++n) {
    std::vector<double> terms(n_zeros);
    for (std::size_t m = 0; m < n_zeros; ++m) terms[m] = term(Complex(0.5, zeros.t[m]), n);
    out.lambda[static_cast<std::size_t>(n - 1)] = pairwise_sum(terms);
  }
  if (!tail_correction) return out;

  // Zeros beyond the table are replaced by the smooth density theta'(t)/pi,
  // starting where the smooth count reaches the number of zeros used.
  const double T = smooth_zero_count_inverse(static_cast<double>(n_zeros));
  out.tail_cutoff = T;
  boost::math::quadrature::exp_sinh<double> integrator;
  for (int n = 1; n <= n_max; ++n) {
    auto f = [&](double v) {
      const double t = T + v;
      return term(Complex(0.5, t), n) * riemann_siegel_theta_prime(t) / kPi;
    };
    out.lambda[static_cast<std::size_t>(n - 1)] += integrator.integrate(f);
    // S(t) = N(t) - N_smooth(t) is O(ln t); integrating it against the O(n^2/t^2)
    // summand leaves an error of this size.
    out.error[static_cast<std::size_t>(n - 1)] =
        static_cast<double>(n) * n * std::log(T) / (T * T);
  }
  return out;
}

LiComparison compare_li(const LiSeries& a, const LiSeries& b, double tolerance) {
  require(a.lambda.size() == b.lambda.size(), "compare_li: series lengths differ");
  LiComparison out;
  out.tolerance = tolerance;
  out.difference.resize(a.lambda.size());
  for (std::size_t i = 0; i < a.lambda.size(); ++i) {
    out.difference[i] = std::abs(a.lambda[i] - b.lambda[i]);
    out.max_difference = std::max(out.max_difference, out.difference[i]);
  }
  out.agree = out.max_difference <= tolerance;
  return out;
}

}  // namespace zumm
