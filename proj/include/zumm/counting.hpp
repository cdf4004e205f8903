#pragma once

#include <cstddef>

#include "zumm/zeros.hpp"

namespace zumm {

enum class CountingKind { J, Psi, JLocal };

struct CountingValue {
  double value = 0.0;
  /// Size of the first neglected contribution (zeros, poles); 0 in direct mode.
  double tail_estimate = 0.0;
  std::size_t terms = 0;
};

/// Chebyshev psi(x) = sum_{p^k <= x} ln p; midpoint at prime powers.
double psi_direct(double x);
/// J(x) = sum_{p^k <= x} 1/k; midpoint at prime powers.
double j_direct(double x);
/// Number of k >= 1 with p^k <= x; midpoint at powers of p.
double j_local_direct(long p, double x);

/// x - sum_rho x^rho/rho - ln(2 pi) - (1/2) ln(1 - x^{-2}) over the first n zeros
/// and their conjugates.
CountingValue psi_explicit(double x, const ZeroTable& zeros, std::size_t n_zeros);
/// li(x) - sum_rho Ei(rho ln x) - ln 2 + int_x^inf dt / (t (t^2 - 1) ln t).
CountingValue j_explicit(double x, const ZeroTable& zeros, std::size_t n_zeros);
/// Sum over the poles s = 2 pi i k / ln p, |k| <= n_poles, of the local factor:
/// u - 1/2 + sum_k sin(2 pi k u)/(pi k), u = ln x / ln p.
CountingValue j_local_explicit(long p, double x, std::size_t n_poles);

}  // namespace zumm
