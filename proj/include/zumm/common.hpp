#pragma once

#include <complex>
#include <functional>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace zumm {

using Complex = std::complex<double>;
using ComplexL = std::complex<long double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kEulerGamma = std::numbers::egamma;

/// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the inputs was violated (bad prime, bad radius, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Two routes that must agree did not, or a tail estimate is unbounded.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Evaluation landed on a pole of the function.
class PoleError : public Error {
 public:
  PoleError(const std::string& what, long index = 0) : Error(what), index_(index) {}
  long index() const noexcept { return index_; }

 private:
  long index_;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw ValidationError(what);
}

bool is_prime(long long n);

/// Pairwise summation; the result does not depend on how the input was produced.
template <typename T>
T pairwise_sum(std::span<const T> xs) {
  if (xs.size() <= 8) {
    T acc{};
    for (const auto& x : xs) acc += x;
    return acc;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.subspan(0, half)) + pairwise_sum(xs.subspan(half));
}

template <typename T>
T pairwise_sum(const std::vector<T>& xs) {
  return pairwise_sum(std::span<const T>(xs.data(), xs.size()));
}

/// Worker count used by parallel loops; 0 means hardware concurrency.
struct Parallelism {
  unsigned threads = 0;
  unsigned resolve() const;
};

/// Runs body(i) for i in [0, n) on up to par.resolve() threads. Each index is
/// visited exactly once; callers write into preallocated slots so the result
/// is independent of the worker count.
void parallel_for(std::size_t n, const Parallelism& par,
                  const std::function<void(std::size_t)>& body);

}  // namespace zumm
