#include <doctest.h>

#include "zumm/counting.hpp"
#include "zumm/primes.hpp"
#include "zumm/special.hpp"

using namespace zumm;

namespace {

const ZeroTable& zeros() {
  static const ZeroTable zt = ingest_zeros(std::string(ZUMM_ZEROS_FILE), 1e-6, 400);
  return zt;
}

}  // namespace

TEST_CASE("direct counting functions") {
  const double psi = 3 * std::log(2.0) + 2 * std::log(3.0) + std::log(5.0) + std::log(7.0);
  CHECK(std::abs(psi_direct(10.5) - psi) < 1e-13);
  CHECK(std::abs(psi_direct(10.5) - 7.832015) < 1e-6);
  CHECK(std::abs(j_direct(20.0) - (8 + 1 + 1.0 / 3 + 1.0 / 4)) < 1e-13);
  CHECK(j_local_direct(2, 10.0) == 3.0);
  // Midpoint convention at jumps.
  CHECK(std::abs(psi_direct(8.0) - (psi_direct(7.999) + 0.5 * std::log(2.0))) < 1e-13);
  CHECK(j_local_direct(2, 8.0) == 2.5);
  CHECK(std::abs(j_direct(5.0) - (j_direct(4.999) + 0.5)) < 1e-13);
}

TEST_CASE("psi from zeros") {
  // psi(x) - [x - sum_rho x^rho / rho - ln 2 pi - ln(1 - x^-2) / 2] with the
  // first N zeros, summed in mpmath at 30 digits from the same table.
  struct Case {
    double x;
    std::size_t n;
    double error;
  };
  const Case cases[] = {{10.5, 100, 0.0032208955200498934},  {10.5, 200, 0.014561048516850583},
                        {10.5, 400, 0.028712282909199693},   {100.5, 100, 0.9639474107434864},
                        {100.5, 200, -0.13553266593498847},  {100.5, 400, -0.479808326422571}};
  for (const auto& c : cases) {
    const auto e = psi_explicit(c.x, zeros(), c.n);
    CHECK(std::abs((e.value - psi_direct(c.x)) - c.error) < 1e-9);
    CHECK(e.terms == c.n);
  }
  CHECK(std::abs(psi_explicit(10.5, zeros(), 100).value - psi_direct(10.5)) < 0.1);
  // Sharp truncation is not monotone in the number of zeros: the error at
  // 10.5 grows from 100 to 200 zeros even though the tail estimate shrinks.
  CHECK(psi_explicit(10.5, zeros(), 200).tail_estimate < psi_explicit(10.5, zeros(), 100).tail_estimate);
  CHECK_THROWS_AS(psi_explicit(10.5, zeros(), 0), ValidationError);
  CHECK_THROWS_AS(psi_explicit(10.5, zeros(), 100000), ValidationError);
}

TEST_CASE("J from zeros") {
  for (double x : {20.5, 50.5}) {
    const auto e = j_explicit(x, zeros(), 400);
    CHECK(std::abs(e.value - j_direct(x)) < 0.05);
  }
}

TEST_CASE("local counting function from its poles") {
  for (long p : {2L, 3L, 5L})
    for (double x : {3.3, 10.0 / 3.0, 77.7}) {
      const auto e = j_local_explicit(p, x, 20000);
      CHECK(std::abs(e.value - j_local_direct(p, x)) <= e.tail_estimate + 1e-12);
    }
  // At a jump the Fourier series lands on the midpoint.
  CHECK(std::abs(j_local_explicit(2, 8.0, 10).value - 2.5) < 1e-12);
}

TEST_CASE("truncated local Dirichlet series stays inside its geometric tail") {
  const double X = 1e6;
  for (long p : {2L, 3L, 5L})
    for (double s : {0.1, 0.5, 1.0, 2.5}) {
      double sum = 0;
      int N = 0;
      for (double v = p; v <= X; v *= p) {
        ++N;
        sum += std::pow(double(p), -N * s);
      }
      const double w = std::pow(double(p), -s);
      const double target = w * special::zeta_local(p, Complex(s, 0)).real();
      const double tail = std::pow(double(p), -s * (N + 1)) / (1 - w);
      CHECK(std::abs(target - sum) <= tail * (1 + 1e-12) + 4e-16);
    }
}
