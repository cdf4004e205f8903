#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zumm/common.hpp"

namespace zumm::rmt {

/// Eigenphase samples, each sorted in (-pi, pi].
struct EnsembleSample {
  int n = 0;
  std::vector<std::vector<double>> phases;
  std::uint64_t seed = 0;
  std::string source;
};

/// Haar unitaries from the QR factorization of complex Ginibre matrices with
/// R's diagonal phases moved into Q. Sample k uses its own generator seeded
/// from (seed, k), so the output does not depend on the worker count.
EnsembleSample sample_cue(int n, std::size_t samples, std::uint64_t seed,
                          const Parallelism& par = {});

/// Sign applied to the one-body term of the plaquette action. With -1 the
/// weight is exactly exp(-S) for S as written in the module docs, and the
/// eigenvalue density comes out as (1/2 pi)(1 - 2 sum beta_n cos n theta).
/// Fixed from the beta_1-only run and frozen here.
inline constexpr int kPlaquetteSign = -1;

struct PlaquetteSpec {
  int n = 32;
  std::vector<double> beta;  ///< beta_1..beta_M
  int sweeps = 20000;        ///< measured sweeps per chain
  int burn_in = 2000;
  int chains = 4;
  int bins = 64;
  int thin = 10;             ///< keep every thin-th configuration as a sample
  double initial_width = 0.5;
  std::uint64_t seed = 1;
};

struct PlaquetteResult {
  EnsembleSample sample;
  std::vector<double> bin_centers;
  std::vector<double> density;     ///< normalized histogram, unit mass over (-pi, pi]
  std::vector<std::uint64_t> counts;
  double acceptance_rate = 0.0;    ///< measured sweeps only
  bool acceptance_in_range = true; ///< within [0.1, 0.9]
  std::vector<double> final_width; ///< proposal width per chain after burn-in
  double ungapped_min = 0.0;       ///< min of 1 + 2 sign sum beta_n cos n theta
  int empty_bins = 0;              ///< gap diagnostic: histogram bins with no entries
};

/// Metropolis on eigenphases with single-site Gaussian moves, action
/// N sum_i sum_n (2 beta_n/n) cos(n theta_i) - sum_{i<j} ln|4 sin^2((theta_i-theta_j)/2)|.
/// The proposal width adapts toward 0.4 acceptance during burn-in only.
PlaquetteResult plaquette_mc(const PlaquetteSpec& spec, const Parallelism& par = {});

/// Density the frozen sign convention predicts: (1/2 pi)(1 + 2 sign sum beta_n cos n theta).
double plaquette_oracle_density(double theta, const std::vector<double>& beta);

struct CorrelationReport {
  std::vector<double> bin_centers;
  std::vector<double> r2;
  std::vector<double> sine_kernel;  ///< 1 - (sin pi r / pi r)^2 averaged over each bin
  double l2_sine = 0.0;
  double l2_poisson = 0.0;          ///< distance to the constant 1
  std::size_t points = 0;
  double bin_width = 0.0;
};

/// Pair correlation of points already unfolded to unit mean spacing.
/// Circular groups use the shorter arc between points (period = group size).
CorrelationReport pair_correlation_unfolded(const std::vector<std::vector<double>>& groups,
                                            bool circular, int bins, double r_max);

/// CUE samples: multiply phases by N/(2 pi) and treat each as a circle.
CorrelationReport pair_correlation_cue(const EnsembleSample& sample, int bins = 30, double r_max = 3.0);

/// Zeta zero ordinates, unfolded by the smooth zero count.
CorrelationReport pair_correlation_zeros(const std::vector<double>& t, int bins = 30, double r_max = 3.0);

/// n i.i.d. uniform points on [0, n) as the Poisson control.
std::vector<double> poisson_points(std::size_t n, std::uint64_t seed);

/// Nearest-neighbour spacings on the circle, in units of the mean spacing 2 pi / N.
std::vector<double> circular_spacings(const EnsembleSample& sample);

/// Kolmogorov-Smirnov statistic and asymptotic p-value against a CDF.
struct KsResult {
  double statistic;
  double p_value;
};
KsResult ks_test(std::vector<double> data, const std::function<double(double)>& cdf);

/// Shorter arc between the two eigenphases of a 2x2 CUE matrix.
double cue2_arc(const std::vector<double>& phases);

/// CDF of that arc on [0, pi]: (m - sin m) / pi, from the joint density
/// proportional to sin^2 of the half difference.
double cue2_arc_cdf(double m);

}  // namespace zumm::rmt
