#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zumm/common.hpp"
#include "zumm/padic.hpp"

namespace zumm::umm {

/// z = (s-1)/(s+1), s = (1+z)/(1-z); on |z| = 1, s = i cot(theta/2).
struct ConformalPoint {
  Complex s;
  Complex z;
  std::optional<double> theta;  ///< set only when |z| = 1
  bool s_infinite = false;      ///< z = 1
  bool z_infinite = false;      ///< s = -1
};

ConformalPoint from_s(Complex s);
ConformalPoint from_z(Complex z);
ConformalPoint from_theta(double theta);

enum class ModelKind { LocalZeta, GammaPlace, ShiftedZeta, SymmetricXi };
enum class Branch { Inside, Outside };

struct ResolventModel {
  ModelKind kind = ModelKind::LocalZeta;
  long prime = 2;    ///< LocalZeta
  double s0 = 1.5;   ///< ShiftedZeta
  Branch branch = Branch::Inside;

  static ResolventModel local_zeta(long p, Branch b = Branch::Inside);
  static ResolventModel gamma_place(Branch b = Branch::Inside);
  static ResolventModel shifted_zeta(double s0, Branch b = Branch::Inside);
  static ResolventModel symmetric_xi(Branch b = Branch::Inside);
  std::string name() const;
};

/// Closed-form resolvent on the model's branch; |z| = 1 is rejected.
///   LocalZeta  R_< = 1 + z w / ((1-z)^2 (1-w)),  w = p^{-s}
///              R_> = -z / (1-z)^2 * p^s / (1 - p^s)
///   GammaPlace R_< = 1 + (z/2) d/dz ln zeta_R(s)
///              R_> = (z/2) d/dz ln zeta_R(-s)
///   ShiftedZeta(s0) R_< = 1 + z/(1-z)^2 (zeta'/zeta)(s0 + (1+z)/(2(1-z)))
///   SymmetricXi     R_< = 1 - ln(2 xi(1/(1-z))) / (2 ln 2)
/// The last two have no independent outer form; R_>(z) = 1 - R_<(1/z).
Complex resolvent(const ResolventModel& model, Complex z);

/// R_<(z) - 1 in extended precision (the part the beta coefficients come from).
ComplexL resolvent_fluctuation(const ResolventModel& model, ComplexL z);

struct ContourSpec {
  double radius = 0.5;
  int nodes = 512;
  /// Second radius for the consistency check; 0 picks 0.8 * radius.
  double second_radius = 0.0;
  /// Largest acceptable radius-consistency error before NumericError.
  double tolerance = 1e-7;
};

struct BetaSeries {
  std::string model;
  std::vector<Complex> beta;       ///< beta_1..beta_M at index 0..M-1
  std::vector<double> error;       ///< per coefficient: max of radius and node-halving differences
  double radius = 0.0;
  int nodes = 0;
  double second_radius = 0.0;
  double radius_error = 0.0;       ///< max_n |beta_n(r) - beta_n(r2)|
  double node_error = 0.0;         ///< max_n |beta_n(Q) - beta_n(Q/2)|

  std::size_t size() const noexcept { return beta.size(); }
  double max_imag() const;
};

/// beta_n = (1/2 pi i) oint dz z^{-n-1} (R_<(z) - 1), trapezoid rule on |z| = r.
BetaSeries beta_contour(const ResolventModel& model, int max_index, const ContourSpec& spec = {},
                        const Parallelism& par = {});

/// Generic version: Taylor coefficients [z^n] g(z), n = 1..max_index, of a
/// function analytic on the closed disk of radius r. With `log_of` set, g is
/// the logarithm of that function, unwrapped along the contour.
BetaSeries taylor_contour(const std::string& label,
                          const std::function<ComplexL(ComplexL)>& g, int max_index,
                          const ContourSpec& spec, const Parallelism& par, bool unwrap_log = false);

/// sum_n beta_n^{(p)} z^n / n = (1/(2 ln p)) ln[(1 - p^{-s}) / (1 - p^{-1})].
Complex potential_sum_local(long p, Complex z);

struct Spike {
  long n;          ///< pole index, cot(theta_n/2) = 2 pi n / ln p
  double theta;    ///< in (0, 2 pi)
  double weight;   ///< pi / ln p in the cot(theta/2) coordinate
};

struct DensityProfile {
  long prime = 2;
  std::vector<Spike> spikes;
  std::vector<double> theta;
  std::vector<double> vprime;  ///< V'(theta) on the grid
};

/// V'(theta) = cot((ln p / 2) cot(theta/2)) / (4 sin^2(theta/2)), the symmetric
/// sum over poles.
double vprime_local(long p, double theta);

/// Spikes for n = 0, +-1, ..., +-n_spikes and V' on the grid. Grid points within
/// 1e-9 of a listed spike or of theta = 0 (mod 2 pi) are rejected.
DensityProfile density_profile(long p, const std::vector<double>& theta_grid, int n_spikes);

/// p (1 - csc^2(theta/2) |h|_p^{i cot(theta/2) - 1} / (2 (p-1))).
Complex phase_space_density(long p, double theta, const padic::Rational& h);

struct TraceFluctuation {
  Complex partial;
  Complex closed_form;
  double tail_bound;
};

/// sum_{n=1}^N p^{-n w} and p^{-w}/(1 - p^{-w}), w = eps + i cot(theta/2).
TraceFluctuation trace_fluctuation(long p, double theta, double eps, int terms);

/// h(theta) = 1/2 + sum_n Re(beta_n) cos(n theta) + f_even(theta).
double boundary_h(double theta, const std::vector<Complex>& beta,
                  const std::function<double(double)>& f_even = {});

/// Ungapped density (1/2 pi)(1 + 2 sum_n beta_n cos n theta), unit mass.
double ungapped_density(double theta, const std::vector<double>& beta);

}  // namespace zumm::umm
