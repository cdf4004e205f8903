#pragma once

#include <cstdint>
#include <vector>

#include "zumm/umm.hpp"

namespace zumm::renorm {

using umm::BetaSeries;
using umm::ContourSpec;

struct PrimeSumSpec {
  std::int64_t prime_max = 10'000'000;
  int power_max = 60;
  /// Replace the primes above prime_max by the prime number theorem density
  /// (with the exact boundary term theta(P) - P) and bound what is left.
  bool tail_correction = true;
};

/// beta_m^ren(mu) = (1/4 pi) int dx ((ix+1)/(ix-1))^m sum_p ln p sum_n p^{-n(mu + ix/2)},
/// done term by term in closed form: the residue at x = -i gives
/// -ln p p^{-n(mu+1/2)} L^{(1)}_{m-1}(n ln p). Needs mu > 1.
/// `error` holds the truncation bound per coefficient.
BetaSeries beta_ren_prime_sum(int max_index, double mu, const PrimeSumSpec& spec = {},
                              const Parallelism& par = {});

/// beta_m^ren(mu) = [z^{m-1}] (zeta'/zeta)(mu + (1+z)/(2(1-z))) / (1-z)^2. Needs mu > 1.
BetaSeries beta_ren_shifted(int max_index, double mu, const ContourSpec& spec = {},
                            const Parallelism& par = {});

/// Coefficients of the three logs making up ln xi(1/(1-z)):
///   Xi_m = [z^m] ln xi(1/(1-z))
///   R_m  = [z^m] ln zeta_R(1/(1-z))
///   G_m  = [z^m] ln(z zeta(1/(1-z)))   (the mu = 1/2 renormalized set)
/// with ln xi = ln(1/2) - 2 ln(1-z) + ln zeta_R + ln(z zeta), so Xi_m = 2/m + R_m + G_m.
struct XiDecomposition {
  BetaSeries xi;
  BetaSeries real_place;
  BetaSeries g;
  std::vector<double> identity_residual;  ///< |Xi_m - 2/m - R_m - G_m|
  double max_identity_residual = 0.0;
};

XiDecomposition xi_decomposition(int max_index, const ContourSpec& spec = {},
                                 const Parallelism& par = {});

/// beta_m = (1/4 pi i) oint dz z^{-m} d/dz ln zeta_R((1+z)/(1-z)).
BetaSeries beta_gamma(int max_index, const ContourSpec& spec = {}, const Parallelism& par = {});

/// beta_m^sym = -(1/(2 ln 2)) [z^m] ln xi(1/(1-z)).
BetaSeries beta_symmetric(int max_index, const ContourSpec& spec = {}, const Parallelism& par = {});

/// Generalized Laguerre L^{(1)}_k(u) (exposed for tests).
double laguerre1(int k, double u);

}  // namespace zumm::renorm
