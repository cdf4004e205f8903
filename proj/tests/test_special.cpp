#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <random>

#include "zumm/special.hpp"

using namespace zumm;
using namespace zumm::special;

namespace {

// Frozen reference values from mpmath at 30 digits.
struct Ref {
  Complex arg;
  Complex value;
};

bool close(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

// sum_{n<N} n^-s + N^{1-s}/(s-1) + N^-s/2, valid for real s > 1.
double zeta_direct(double s, long N) {
  double acc = 0;
  for (long n = N - 1; n >= 1; --n) acc += std::pow(double(n), -s);
  return acc + std::pow(double(N), 1 - s) / (s - 1) + 0.5 * std::pow(double(N), -s);
}

}  // namespace

TEST_CASE("zeta at real points") {
  CHECK(std::abs(zeta_direct(2.0, 1000000) - 1.6449340668482264) < 1e-12);
  CHECK(std::abs(zeta<double>(Complex(2, 0)).value - Complex(zeta_direct(2.0, 1000000), 0)) < 1e-10);
  CHECK(std::abs(zeta<double>(Complex(3.5, 0)).value.real() - zeta_direct(3.5, 100000)) < 1e-12);
  CHECK(std::abs(zeta<double>(Complex(-2, 0)).value) < 1e-10);
  CHECK(std::abs(zeta<double>(Complex(-4, 0)).value) < 1e-10);
  CHECK(std::abs(zeta<double>(Complex(-1, 0)).value - Complex(-1.0 / 12, 0)) < 1e-12);
  CHECK(std::abs(zeta<double>(Complex(0, 0)).value - Complex(-0.5, 0)) < 1e-12);
}

TEST_CASE("zeta in the complex plane against mpmath") {
  const Ref refs[] = {
      {{2, 3}, {0.79802198514627572, -0.1137443080529385}},
      {{-2.5, 1}, {0.023593610586379649, 0.001407799605838377}},
      {{0.5, 14}, {0.022241142609993589, -0.10325812326645006}},
      {{0.5, 100}, {2.6926198856813241, -0.020386029602598162}},
  };
  for (const auto& r : refs) {
    const auto z = zeta<double>(r.arg);
    CHECK(close(z.value, r.value, 1e-12));
    CHECK(z.error < 1e-10);
  }
}

TEST_CASE("zeta pole is reported as a pole") {
  CHECK_THROWS_AS(zeta<double>(Complex(1, 0)), PoleError);
  CHECK(std::abs(zeta_times_pole<double>(Complex(1, 0)).value - Complex(1, 0)) < 1e-14);
}

TEST_CASE("zeta reflection identity") {
  for (Complex s : {Complex(0.3, 2.0), Complex(0.7, -5), Complex(0.2, 25)}) {
    const Complex lhs = zeta<double>(s).value;
    const Complex rhs = std::pow(Complex(2), s) * std::pow(Complex(kPi), s - 1.0) * std::sin(kPi * s / 2.0) *
                        gamma<double>(1.0 - s) * zeta<double>(1.0 - s).value;
    CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("xi values and symmetry") {
  CHECK(close(xi<double>(Complex(0.3, 2)), {0.45344861882575758, -0.0084367380614749771}, 1e-12));
  CHECK(close(xi<double>(Complex(2, 0)), {0.52359877559829887, 0}, 1e-14));
  CHECK(std::abs(xi<double>(Complex(0, 0)) - Complex(0.5, 0)) < 1e-14);
  // Brute-force limit from the right along the real axis.
  CHECK(std::abs(xi<double>(Complex(1e-7, 0)).real() - 0.5) < 1e-6);
  CHECK(std::abs(xi<double>(Complex(0.3, 4)) - xi<double>(Complex(0.7, -4))) < 1e-10);
  CHECK(std::abs(xi<double>(Complex(0.5, 14.134725141734694))) < 1e-6);

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> re(-0.5, 1.5), im(-30, 30);
  for (int i = 0; i < 50; ++i) {
    const Complex s(re(rng), im(rng));
    const Complex a = xi<double>(s), b = xi<double>(1.0 - s);
    CHECK(std::abs(a - b) < 1e-10 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("log xi matches log of xi") {
  for (Complex s : {Complex(1.3, 0.2), Complex(0.8, -0.3), Complex(2, 5)}) {
    const Complex a = std::exp(log_xi<double>(s));
    CHECK(std::abs(a - xi<double>(s)) < 1e-13 * std::abs(a));
  }
}

TEST_CASE("gamma family against mpmath") {
  CHECK(close(log_gamma<double>(Complex(3, 4)), {-1.7566267846037841, 4.7426644380346579}, 1e-14));
  CHECK(close(gamma<double>(Complex(-1.5, 0.5)), {0.93791666278788505, 0.34920566814780487}, 1e-13));
  CHECK(close(digamma<double>(Complex(0.25, 5)), {1.6090205127143305, 1.6209229399442998}, 1e-14));
  CHECK(close(digamma<double>(Complex(-2.3, 0.1)), {3.0102285312973857, 1.3568669205866748}, 1e-13));
  CHECK_THROWS_AS(gamma<double>(Complex(-3, 0)), PoleError);
  CHECK_THROWS_AS(digamma<double>(Complex(0, 0)), PoleError);
}

TEST_CASE("recurrences hold on a grid") {
  for (double x = -3.7; x < 6; x += 0.61)
    for (double y = -9; y < 9; y += 1.3) {
      const Complex z(x, y);
      const Complex lhs = digamma<double>(z + 1.0);
      const Complex rhs = digamma<double>(z) + 1.0 / z;
      CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(lhs)));
      if (x > 0) {
        const Complex lg = log_gamma<double>(z + 1.0) - log_gamma<double>(z) - std::log(z);
        CHECK(std::abs(lg) < 1e-12 * std::max(1.0, std::abs(log_gamma<double>(z))));
      }
    }
}

TEST_CASE("zeta log derivative") {
  CHECK(close(zeta_log_derivative<double>(Complex(2, 1)), {-0.093798593476955746, 0.38943937999898505}, 1e-12));
  CHECK(close(zeta_log_derivative<double>(Complex(0.5, 10)), {-0.23214531343246514, -0.019657165235057259}, 1e-12));
}

TEST_CASE("exponential integral") {
  CHECK(close(expint_ei({2, 3}), {-0.3615519445996403, 5.2705484358136946}, 1e-13));
  CHECK(close(expint_ei({-5, 0}), {-0.0011482955912753258, 0}, 1e-12));
  CHECK(close(expint_ei({30, 1}), {209840771895.59932, 303224387105.26605}, 1e-13));
  CHECK(close(expint_ei({-10, 20}), {1.2014150025218431e-6, 3.141591070609264}, 1e-13));
  CHECK_THROWS_AS(expint_ei({0, 0}), PoleError);
}

TEST_CASE("local and real-place zeta factors") {
  CHECK(std::abs(zeta_local(2, {2, 0}) - Complex(4.0 / 3, 0)) < 1e-15);
  const double spacing = kTwoPi / std::log(2.0);
  CHECK(spacing == doctest::Approx(9.0647203).epsilon(1e-8));
  try {
    zeta_local(2, Complex(0, 3 * spacing));
    FAIL("expected a pole");
  } catch (const PoleError& e) {
    CHECK(e.index() == 3);
  }
  CHECK(local_pole_index(3, Complex(0.1, -2 * kTwoPi / std::log(3.0) + 0.01)) == -2);

  // Mellin integral of the Gaussian: zeta_R(s) = 2 int_0^inf e^{-pi x^2} x^{s-1} dx.
  boost::math::quadrature::exp_sinh<double> integ;
  for (double s : {2.0, 3.7, 1.5}) {
    const double q = 2 * integ.integrate([s](double x) { return x > 30 ? 0.0 : std::exp(-kPi * x * x) * std::pow(x, s - 1); });
    CHECK(std::abs(zeta_real_place<double>(Complex(s, 0)).real() - q) < 1e-12);
  }
  CHECK(std::abs(zeta_real_place<double>(Complex(2, 0)).real() - 0.3183098862) < 1e-10);
}
