#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "zumm/common.hpp"

namespace zumm::contour {

/// f at z_j = center + r exp(2 pi i j / Q), j = 0..Q-1. Q must be a power of two.
std::vector<ComplexL> sample_circle(const std::function<ComplexL(ComplexL)>& f, ComplexL center,
                                    long double radius, int nodes, const Parallelism& par = {});

/// Trapezoid-rule Taylor coefficients c_0..c_max_index from circle samples:
/// c_k = (1/Q) sum_j f_j exp(-2 pi i jk/Q) r^{-k}. Uses every `stride`-th
/// sample, so stride 2 gives the Q/2-node rule from the same samples.
std::vector<ComplexL> coefficients(const std::vector<ComplexL>& samples, long double radius,
                                   int max_index, int stride = 1);

/// Adds multiples of 2 pi i to each log sample so the imaginary part moves by
/// less than pi between neighbours, anchored at sample `anchor` (left as is).
/// Throws NumericError if the closed loop does not return to its start, i.e.
/// the logged function winds around 0 on the circle.
void unwrap_log(std::vector<ComplexL>& logs, std::size_t anchor = 0);

bool is_power_of_two(int n);

}  // namespace zumm::contour
