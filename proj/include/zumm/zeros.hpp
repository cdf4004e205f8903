#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "zumm/common.hpp"

namespace zumm {

/// Imaginary parts t_m of nontrivial zeros 1/2 + i t_m, ascending.
struct ZeroTable {
  std::vector<double> t;
  /// |xi(1/2 + i t)|. Underflows to 0 above t ~ 900, so it is paired with the
  /// scale-free |zeta(1/2 + i t)|; both must be below the tolerance.
  std::vector<double> xi_residual;
  std::vector<double> zeta_residual;
  struct Rejected {
    std::size_t line;
    double t;
    double zeta_residual;
  };
  std::vector<Rejected> rejected;
  std::string source;
  double tolerance = 0.0;

  std::size_t size() const noexcept { return t.size(); }
  /// The first n accepted zeros; ValidationError if fewer are available.
  ZeroTable prefix(std::size_t n) const;
};

/// Reads one decimal per line, '#' comments and blank lines ignored. Entries
/// must be positive and strictly increasing. max_count > 0 stops after that
/// many entries.
ZeroTable ingest_zeros(const std::string& path, double validation_tol, std::size_t max_count = 0,
                       const Parallelism& par = {});
ZeroTable ingest_zeros(std::istream& in, const std::string& source, double validation_tol,
                       std::size_t max_count = 0, const Parallelism& par = {});

/// Riemann-Siegel theta, Im lnGamma(1/4 + it/2) - (t/2) ln pi.
double riemann_siegel_theta(double t);
/// theta'(t).
double riemann_siegel_theta_prime(double t);
/// Smooth zero count N(t) = theta(t)/pi + 1.
double smooth_zero_count(double t);
/// Inverse of smooth_zero_count on t > 10.
double smooth_zero_count_inverse(double n);

}  // namespace zumm
