#pragma once

#include <map>
#include <optional>

#include "zumm/padic.hpp"

namespace zumm::wavelet {

using padic::PAdicNumber;
using padic::Rational;

/// Kozyrev wavelet label psi_{n,m,j}(xi) = p^{-n/2} chi(j p^{n-1} xi) 1[|p^n xi - m|_p <= 1].
/// The support is the ball of radius p^n about m p^{-n}; the function is
/// constant on cosets of p^{1-n} Z_p.
struct WaveletIndex {
  long p = 2;
  long n = 0;
  Rational m = 0;  ///< in [0, 1), denominator a power of p
  long j = 1;      ///< 1 <= j <= p-1

  /// Element psi_{1-k, 0, 1} of the restricted basis, k >= 1.
  static WaveletIndex restricted(long p, long k);
  /// Coset level at which the wavelet is constant.
  long constancy_level() const noexcept { return 1 - n; }
  void validate() const;
};

Complex kozyrev_eval(const WaveletIndex& idx, const PAdicNumber& xi);
/// Same, at an exact rational point.
Complex kozyrev_eval(const WaveletIndex& idx, const Rational& xi);

/// <a, b> = int conj(psi_a) psi_b dxi, summed over level-K cosets of the
/// intersection of the two supports.
Complex inner_product(const WaveletIndex& a, const WaveletIndex& b, long level);

/// int psi dxi at coset level K.
Complex integrate(const WaveletIndex& idx, long level);

enum class VladimirovMode { Spectral, Kernel };

struct VladimirovSpec {
  Complex alpha{1.0, 0.0};
  VladimirovMode mode = VladimirovMode::Spectral;
  long coset_level = 12;    ///< K
  long domain_exponent = 12;  ///< B: integrate over |xi'|_p <= p^B
  /// Add the exact contribution of |xi'|_p > p^B; otherwise it is only bounded.
  bool exterior_closed_form = true;
};

struct VladimirovResult {
  Complex eigenvalue;
  /// max |D psi - lambda psi| / max |lambda psi| over the sample points (kernel mode).
  double residual = 0.0;
  /// |contribution of |xi'| > p^B| relative to max |lambda psi|; reported in both
  /// kernel variants, added to the value only with exterior_closed_form.
  double exterior_tail = 0.0;
  int sample_points = 0;
};

VladimirovResult vladimirov_apply(const VladimirovSpec& spec, const WaveletIndex& idx);

/// Restricted-basis state: coefficients keyed by k for psi_{1-k,0,1}. Components
/// pushed below k = 1 are kept apart in `outside` rather than dropped.
struct WaveletState {
  long p = 2;
  std::map<long, Complex> coeffs;
  std::map<long, Complex> outside;
  bool left_subspace() const noexcept { return !outside.empty(); }
};

enum class LadderOp { JPlus, JMinus, LogD };

/// J+ psi_k = k psi_{k+1}, J- psi_k = -k psi_{k-1}, log_p D psi_k = k psi_k.
WaveletState ladder_apply(LadderOp op, const WaveletState& state);
/// [A, B] state = A(B state) - B(A state).
WaveletState ladder_commutator(LadderOp a, LadderOp b, const WaveletState& state);

WaveletState basis_state(long p, long k);

}  // namespace zumm::wavelet
