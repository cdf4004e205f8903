#pragma once

#include <cstddef>
#include <vector>

#include "zumm/zeros.hpp"

namespace zumm {

struct LiSeries {
  std::vector<double> lambda;  ///< lambda_1..lambda_n at index 0..n-1
  std::vector<double> error;   ///< per-coefficient error estimate
  // cauchy method
  double radius = 0.0;
  int nodes = 0;
  // zero-sum method
  std::size_t zeros_used = 0;
  double tail_cutoff = 0.0;  ///< T where the smooth zero density takes over
};

/// lambda_n = (1/(n-1)!) d^n/ds^n [s^{n-1} ln xi(s)] at s = 1, from the Taylor
/// coefficients of ln xi on the circle |s - 1| = radius. Error: node halving
/// plus a second radius 0.75 * radius.
LiSeries li_cauchy(int n_max, double radius = 0.4, int nodes = 256, const Parallelism& par = {});

/// lambda_n = sum_rho [1 - (1 - 1/rho)^n] with rho = 1/2 + i t_m and conjugates,
/// plus the smooth-density integral over zeros beyond the table
/// (tail_correction = false gives the bare truncated sum).
LiSeries li_zero_sum(int n_max, const ZeroTable& zeros, std::size_t n_zeros,
                     bool tail_correction = true);

struct LiComparison {
  std::vector<double> difference;
  double max_difference = 0.0;
  double tolerance = 0.0;
  bool agree = false;
};

/// |a_n - b_n| <= tolerance for every n; the result is never averaged.
LiComparison compare_li(const LiSeries& a, const LiSeries& b, double tolerance);

}  // namespace zumm
