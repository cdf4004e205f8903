#include <doctest.h>

#include <boost/math/special_functions/laguerre.hpp>

#include "zumm/renorm.hpp"
#include "zumm/special.hpp"

using namespace zumm;
using namespace zumm::renorm;

TEST_CASE("Laguerre polynomials") {
  for (int k = 0; k <= 12; ++k)
    for (double u : {0.0, 0.7, 3.0, 11.5})
      CHECK(std::abs(laguerre1(k, u) - boost::math::laguerre(k, 1, u)) <
            1e-12 * std::max(1.0, std::abs(boost::math::laguerre(k, 1, u))));
  CHECK(laguerre1(1, 0.5) == doctest::Approx(1.5));
  CHECK_THROWS_AS(laguerre1(-1, 1.0), ValidationError);
}

TEST_CASE("prime sum agrees with the shifted contour") {
  PrimeSumSpec ps;
  ps.prime_max = 1'000'000;
  const auto a = beta_ren_prime_sum(10, 1.5, ps);
  const auto b = beta_ren_shifted(10, 1.5);
  for (int m = 0; m < 10; ++m) {
    CHECK(std::abs(a.beta[m] - b.beta[m]) <= a.error[m] + b.error[m] + 1e-12);
    CHECK(a.error[m] < 1e-5);
  }
  // Without the density correction the tail is only bounded, and more loosely.
  ps.tail_correction = false;
  const auto bare = beta_ren_prime_sum(10, 1.5, ps);
  for (int m = 0; m < 10; ++m) {
    CHECK(std::abs(bare.beta[m] - b.beta[m]) <= bare.error[m]);
    CHECK(bare.error[m] > a.error[m]);
  }
}

TEST_CASE("prime sum does not depend on the worker count") {
  PrimeSumSpec ps;
  ps.prime_max = 200'000;
  const auto a = beta_ren_prime_sum(6, 2.0, ps, Parallelism{1});
  const auto b = beta_ren_prime_sum(6, 2.0, ps, Parallelism{4});
  CHECK(a.beta == b.beta);
}

TEST_CASE("renormalisation point must exceed one") {
  CHECK_THROWS_AS(beta_ren_prime_sum(3, 1.0), ValidationError);
  CHECK_THROWS_AS(beta_ren_prime_sum(3, 0.5), ValidationError);
  CHECK_THROWS_AS(beta_ren_shifted(3, 0.9), ValidationError);
}

TEST_CASE("log xi splits into its three factors") {
  const auto d = xi_decomposition(20);
  REQUIRE(d.identity_residual.size() == 20);
  CHECK(d.max_identity_residual < 1e-8);
  for (const auto& s : {d.xi, d.real_place, d.g}) CHECK(s.max_imag() < 1e-9);
}

TEST_CASE("symmetric coefficients are the xi coefficients rescaled") {
  const auto d = xi_decomposition(20);
  const auto sym = beta_symmetric(20);
  for (int m = 0; m < 20; ++m) CHECK(std::abs(-2 * std::log(2.0) * sym.beta[m] - d.xi.beta[m]) < 1e-12);
}

TEST_CASE("shifted model at 1/2 gives m G_m") {
  const auto d = xi_decomposition(15);
  const auto half = umm::beta_contour(umm::ResolventModel::shifted_zeta(0.5), 15);
  for (int m = 1; m <= 15; ++m) CHECK(std::abs(half.beta[m - 1] - double(m) * d.g.beta[m - 1]) < 1e-11);
}

TEST_CASE("gamma coefficients from the log of the real-place factor") {
  // beta_m = (m/2) [z^m] ln zeta_R((1+z)/(1-z))
  umm::ContourSpec cs;
  const auto lz = umm::taylor_contour(
      "lnR", [](ComplexL z) { return special::log_zeta_real_place<long double>((1.0L + z) / (1.0L - z)); }, 20, cs,
      {}, false);
  const auto g = beta_gamma(20);
  for (int m = 1; m <= 20; ++m) CHECK(std::abs(g.beta[m - 1] - 0.5 * m * lz.beta[m - 1]) < 1e-11);
  cs.radius = 1.2;
  CHECK_THROWS_AS(beta_gamma(3, cs), ValidationError);
}
