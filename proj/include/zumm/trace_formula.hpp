#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zumm/common.hpp"
#include "zumm/primes.hpp"
#include "zumm/zeros.hpp"

namespace zumm {

/// Even test function g and its transform h(u) = int g(q) e^{iqu} dq.
///
/// The tail majorants drive the truncation bounds. They assume
/// x^{-1/2} |g(ln x)| and |h(u)| are decreasing past the cutoffs used.
/// A pair without them cannot be used in trace_formula_check.
struct TestFunctionPair {
  std::string name;
  double width = 1.0;  ///< scale of g; sets quadrature ranges and self-test grids
  std::function<double(double)> g;
  std::function<double(double)> h;
  std::function<double(double)> h_imag;  ///< y -> h(iy)
  std::function<double(double)> g_weighted_tail;  ///< Q -> bound on int_Q^inf e^{q/2} |g(q)| dq
  std::function<double(double)> h_tail;           ///< U -> bound on int_U^inf |h(u)| du
  std::function<double(double)> h_moment_tail;    ///< U -> bound on int_U^inf u |h(u)| du

  /// g(q) = exp(-q^2 / 2a^2), h(u) = a sqrt(2 pi) exp(-a^2 u^2 / 2).
  static TestFunctionPair gaussian(double a);
};

struct TransformSelfTest {
  double max_h_error = 0.0;       ///< numerical h vs pair.h on the grid
  double max_double_error = 0.0;  ///< int h(u) e^{iqu} du vs 2 pi g(-q)
  double tolerance = 1e-10;
  bool passed = false;
};

/// Checks h against g by quadrature, and the inverse transform, on grids of
/// 41 points spanning [0, 6/width] and [0, 4 width].
TransformSelfTest transform_self_test(const TestFunctionPair& pair, double tolerance = 1e-10);

/// One tooth of a prime-power comb: location q = n ln p.
struct CombTooth {
  double q;
  double weight;
  std::int64_t prime;
  int exponent;
};

struct PrimePowerComb {
  std::int64_t prime = 0;  ///< 0 for the comb over all primes
  std::optional<double> mu;
  double q_max = 0.0;
  /// Period 2 pi / ln p of the position-marginal lattice; 0 for all primes.
  double position_period = 0.0;
  std::vector<CombTooth> teeth;  ///< ascending q
};

/// Teeth at every prime power p^n <= x_max with weight ln p e^{-mu n ln p}.
/// Shared by the trace-formula prime sum and the all-primes marginal comb.
PrimePowerComb prime_power_comb_upto(std::int64_t x_max, double mu);

/// Momentum-marginal comb. prime = 0 means all primes, n ln p <= q_max.
/// For a fixed prime the weight is ln p, damped by e^{-mu q} when mu is set.
PrimePowerComb wigner_marginal_comb(std::int64_t prime, std::optional<double> mu, double q_max);

struct TraceReport {
  std::string pair;
  double width = 0.0;
  std::size_t n_zeros = 0;
  std::int64_t prime_max = 0;

  // zero side
  double pole_terms = 0.0;        ///< h(i/2) + h(-i/2)
  double zero_sum = 0.0;          ///< -sum over zeros of h, both signs of t
  double digamma_integral = 0.0;  ///< (1/2 pi) int h(u) Re psi(1/4 + iu/2) du
  double lhs = 0.0;

  // prime side
  double log_pi_term = 0.0;  ///< g(0) ln pi
  double prime_sum = 0.0;    ///< 2 sum ln p p^{-n/2} g(n ln p), p^n <= prime_max
  double rhs = 0.0;

  double h_half_closed = 0.0;      ///< h(i/2) from the pair
  double h_half_quadrature = 0.0;  ///< int g(q) e^{-q/2} dq

  double integral_cutoff = 0.0;  ///< U in int_{-U}^{U}
  double zero_tail_bound = 0.0;
  double prime_tail_bound = 0.0;
  double integral_tail_bound = 0.0;
  double quadrature_error = 0.0;
  double rounding_bound = 0.0;
  double total_bound = 0.0;

  double residual = 0.0;  ///< lhs - rhs
  bool within_bound = false;
  TransformSelfTest self_test;
};

/// Explicit-formula check for the pair against the first n zeros of the table
/// and the prime powers up to primes.limit(). Throws NumericError when the
/// self-test fails or a tail majorant is missing or not finite.
TraceReport trace_formula_check(const TestFunctionPair& pair, const ZeroTable& zeros,
                                const PrimeTable& primes);

/// Upper bound for the zero count N(t) with the explicit error term
/// 0.112 ln t + 0.278 ln ln t + 2.51 + 0.2/t, t >= e.
double zero_count_upper(double t);

/// Majorant ln(1 + u) + 5 for |Re psi(1/4 + iu/2)|, u >= 0.
double digamma_envelope(double u);

}  // namespace zumm
