#include "zumm/special.hpp"

#include <cmath>

namespace zumm::special {

namespace {

// E1(z) by the even continued fraction, modified Lentz; |z| > ~2, |arg z| < pi.
Complex expint_e1_cf(Complex z) {
  const double tiny = 1e-300;
  Complex b = z + 1.0;
  Complex c = 1.0 / tiny;
  Complex d = 1.0 / b;
  Complex h = d;
  for (int i = 1; i < 5000; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const Complex del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) return h * std::exp(-z);
  }
  throw NumericError("expint: continued fraction did not converge");
}

}  // namespace

Complex zeta_local(long p, Complex s) {
  require(is_prime(p), "zeta_local: p must be prime");
  const Complex denom = 1.0 - std::pow(static_cast<double>(p), -s);
  if (std::abs(denom) < 1e-12)
    throw PoleError("zeta_local: s is a pole of the local factor", local_pole_index(p, s));
  return 1.0 / denom;
}

long local_pole_index(long p, Complex s) {
  return std::lround(s.imag() * std::log(static_cast<double>(p)) / kTwoPi);
}

Complex expint_ei(Complex w) {
  if (w == Complex(0)) throw PoleError("expint_ei: logarithmic singularity at 0", 0);
  // Power series where its terms do not cancel badly: small |w|, or w near the
  // positive real axis where the continued fraction for E1(-w) fails.
  const bool near_positive_axis = w.real() > 0 && std::abs(w.imag()) < 0.25 * std::abs(w);
  if (std::abs(w) <= 4.0 || (near_positive_axis && std::abs(w) < 60.0)) {
    Complex term = 1.0, sum = 0.0;
    for (int k = 1; k < 1000; ++k) {
      term *= w / static_cast<double>(k);
      const Complex add = term / static_cast<double>(k);
      sum += add;
      if (std::abs(add) < 1e-17 * std::abs(sum)) break;
    }
    return kEulerGamma + std::log(w) + sum;
  }
  // Ei(w) = -E1(-w) + i pi sgn(Im w); on the positive real axis take the
  // principal value (average of the two sides).
  const Complex e1 = expint_e1_cf(-w);
  double jump = 0.0;
  if (w.imag() > 0) jump = kPi;
  else if (w.imag() < 0) jump = -kPi;
  Complex out = -e1 + Complex(0.0, jump);
  if (w.imag() == 0) out = Complex(out.real(), 0.0);
  return out;
}

}  // namespace zumm::special
