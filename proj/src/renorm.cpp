#include "zumm/renorm.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <algorithm>
#include <cmath>

#include "zumm/primes.hpp"
#include "zumm/special.hpp"

namespace zumm::renorm {

namespace {

using LD = long double;

// Coefficients a_j of L^{(1)}_k(u) = sum_j a_j u^j: a_j = (-1)^j C(k+1, j+1) / j!.
std::vector<LD> laguerre1_coeffs(int k) {
  std::vector<LD> a(static_cast<std::size_t>(k + 1));
  for (int j = 0; j <= k; ++j) {
    LD binom = 1;
    for (int i = 1; i <= j + 1; ++i) binom = binom * (k + 2 - i) / i;  // C(k+1, j+1)
    LD fact = 1;
    for (int i = 2; i <= j; ++i) fact *= i;
    a[static_cast<std::size_t>(j)] = ((j % 2) ? -1 : 1) * binom / fact;
  }
  return a;
}

LD horner(const std::vector<LD>& a, LD u) {
  LD acc = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * u + *it;
  return acc;
}

// |theta(x) - x| bounds: Dusart for x >= 3594641, Rosser-Schoenfeld for x >= 563.
double chebyshev_error_bound(double x) {
  const double lx = std::log(x);
  if (x >= 3594641.0) return 0.2 * x / (lx * lx);
  return x / (2.0 * lx);
}

}  // namespace

double laguerre1(int k, double u) {
  require(k >= 0, "laguerre1: degree must be >= 0");
  return static_cast<double>(horner(laguerre1_coeffs(k), u));
}

BetaSeries beta_ren_prime_sum(int max_index, double mu, const PrimeSumSpec& spec,
                              const Parallelism& par) {
  require(max_index >= 1, "beta_ren prime_sum: need at least one coefficient");
  require(mu > 1.0,
          "beta_ren prime_sum: mu must exceed 1 for the double sum over primes and powers to "
          "converge absolutely (sigma <= mu for every zero, and the prime sum needs more)");
  require(spec.power_max >= 1, "beta_ren prime_sum: power_max must be >= 1");
  require(!spec.tail_correction || spec.prime_max >= 563,
          "beta_ren prime_sum: tail correction needs prime_max >= 563");
  const PrimeTable table(spec.prime_max);
  const auto& primes = table.primes();
  const LD sigma = static_cast<LD>(mu) + 0.5L;

  BetaSeries out;
  out.model = "renormalized(prime_sum)";
  out.beta.assign(static_cast<std::size_t>(max_index), 0.0);
  out.error.assign(static_cast<std::size_t>(max_index), 0.0);

  std::vector<std::vector<LD>> coeffs;
  for (int m = 1; m <= max_index; ++m) coeffs.push_back(laguerre1_coeffs(m - 1));

  // Fixed blocks of primes, each summed pairwise, then the block sums pairwise:
  // the reduction order does not depend on the worker count.
  constexpr std::size_t kBlock = 4096;
  const std::size_t n_blocks = (primes.size() + kBlock - 1) / kBlock;
  std::vector<std::vector<LD>> block_sums(static_cast<std::size_t>(max_index),
                                          std::vector<LD>(n_blocks));
  parallel_for(n_blocks, par, [&](std::size_t b) {
    const std::size_t lo = b * kBlock;
    const std::size_t hi = std::min(primes.size(), lo + kBlock);
    std::vector<std::vector<LD>> local(static_cast<std::size_t>(max_index), std::vector<LD>(hi - lo));
    for (std::size_t i = lo; i < hi; ++i) {
      const LD lp = std::log(static_cast<LD>(primes[i]));
      for (int n = 1; n <= spec.power_max; ++n) {
        const LD u = n * lp;
        const LD w = lp * std::exp(-sigma * u);
        if (w < 1e-40L) break;
        for (int m = 1; m <= max_index; ++m)
          local[static_cast<std::size_t>(m - 1)][i - lo] -=
              w * horner(coeffs[static_cast<std::size_t>(m - 1)], u);
      }
    }
    for (int m = 0; m < max_index; ++m)
      block_sums[static_cast<std::size_t>(m)][b] = pairwise_sum(local[static_cast<std::size_t>(m)]);
  });

  const double P = static_cast<double>(spec.prime_max);
  const double lnP = std::log(P);
  LD theta_P = 0;
  {
    std::vector<LD> logs(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i) logs[i] = std::log(static_cast<LD>(primes[i]));
    theta_P = pairwise_sum(logs);
  }
  const double lambda = mu - 0.5;
  boost::math::quadrature::exp_sinh<double> integrator;

  for (int m = 1; m <= max_index; ++m) {
    const auto& a = coeffs[static_cast<std::size_t>(m - 1)];
    LD value = pairwise_sum(block_sums[static_cast<std::size_t>(m - 1)]);
    double bound = 0.0;

    // powers beyond power_max for p <= P: |L^{(1)}_{m-1}(u)| <= m e^{u/2}
    for (auto p : primes) {
      const double lp = std::log(static_cast<double>(p));
      const double q = std::exp(-mu * lp);
      const double t = m * lp * std::pow(q, spec.power_max + 1) / (1.0 - q);
      if (t < 1e-300) break;
      bound += t;
    }
    // all powers n >= 2 of primes above P, same Laguerre bound
    {
      const double e = 2.0 * mu - 1.0;
      const double integral = std::pow(P, -e) * (lnP / e + 1.0 / (e * e));
      bound += m * (integral + lnP * std::pow(P, -2.0 * mu)) / (1.0 - std::pow(P, -mu));
    }

    if (spec.tail_correction) {
      // g(x) = -x^{-sigma} L(ln x); sum_{p > P} ln p g(p) = int_P^inf g dtheta
      //      = int_P^inf g dx - g(P)(theta(P) - P) - int_P^inf (theta - x) g' dx
      LD smooth = 0;
      for (int j = 0; j < static_cast<int>(a.size()); ++j) {
        const double gam = boost::math::tgamma(static_cast<double>(j + 1), lambda * lnP);
        smooth -= a[static_cast<std::size_t>(j)] * static_cast<LD>(gam / std::pow(lambda, j + 1));
      }
      const LD gP = -std::exp(-sigma * static_cast<LD>(lnP)) * horner(a, lnP);
      value += smooth - gP * (theta_P - static_cast<LD>(P));
      // derivative coefficients of L
      std::vector<LD> da(a.size() > 1 ? a.size() - 1 : 1, 0.0L);
      for (std::size_t j = 1; j < a.size(); ++j) da[j - 1] = a[j] * static_cast<LD>(j);
      auto gprime_bound = [&](double v) {
        const double x = P + v;
        const double lx = std::log(x);
        const double gp = std::pow(x, -static_cast<double>(sigma) - 1.0) *
                          std::abs(static_cast<double>(sigma * horner(a, lx) - horner(da, lx)));
        return chebyshev_error_bound(x) * gp;
      };
      bound += integrator.integrate(gprime_bound);
    } else {
      // crude: |sum_{p > P} ln p g(p)| <= m sum_{x > P} ln x x^{-mu}
      const double e = mu - 1.0;
      bound += m * (std::pow(P, -e) * (lnP / e + 1.0 / (e * e)) + lnP * std::pow(P, -mu));
    }
    out.beta[static_cast<std::size_t>(m - 1)] = Complex(static_cast<double>(value), 0.0);
    out.error[static_cast<std::size_t>(m - 1)] = bound;
  }
  return out;
}

BetaSeries beta_ren_shifted(int max_index, double mu, const ContourSpec& spec,
                            const Parallelism& par) {
  require(mu > 1.0, "beta_ren shifted_contour: needs s0 = mu > 1 so zeta is analytic and "
                    "nonvanishing on the image of the disk");
  auto out = umm::beta_contour(umm::ResolventModel::shifted_zeta(mu), max_index, spec, par);
  out.model = "renormalized(shifted_contour)";
  return out;
}

XiDecomposition xi_decomposition(int max_index, const ContourSpec& spec, const Parallelism& par) {
  using C = ComplexL;
  XiDecomposition out;
  // xi evaluated as one product, independent of the three-factor split below
  out.xi = umm::taylor_contour(
      "Xi", [](C z) { return std::log(special::xi<LD>(C(1) / (C(1) - z))); }, max_index, spec, par,
      true);
  out.real_place = umm::taylor_contour(
      "R", [](C z) { return special::log_zeta_real_place<LD>(C(1) / (C(1) - z)); }, max_index, spec,
      par, false);
  // z zeta(1/(1-z)) = (1-z) (s-1) zeta(s)
  out.g = umm::taylor_contour(
      "G",
      [](C z) {
        const C s = C(1) / (C(1) - z);
        return std::log((C(1) - z) * special::zeta_times_pole<LD>(s).value);
      },
      max_index, spec, par, true);
  for (int m = 1; m <= max_index; ++m) {
    const auto i = static_cast<std::size_t>(m - 1);
    const double r = std::abs(out.xi.beta[i] - 2.0 / m - out.real_place.beta[i] - out.g.beta[i]);
    out.identity_residual.push_back(r);
    out.max_identity_residual = std::max(out.max_identity_residual, r);
  }
  return out;
}

BetaSeries beta_gamma(int max_index, const ContourSpec& spec, const Parallelism& par) {
  require(spec.radius < 1.0, "beta_gamma: radius must be < 1");
  return umm::beta_contour(umm::ResolventModel::gamma_place(), max_index, spec, par);
}

BetaSeries beta_symmetric(int max_index, const ContourSpec& spec, const Parallelism& par) {
  require(spec.radius < 1.0, "beta_symmetric: radius must be < 1");
  return umm::beta_contour(umm::ResolventModel::symmetric_xi(), max_index, spec, par);
}

}  // namespace zumm::renorm
