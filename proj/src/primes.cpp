#include "zumm/primes.hpp"

#include <algorithm>
#include <cmath>

#include "zumm/common.hpp"

namespace zumm {

std::vector<std::int64_t> sieve_primes(std::int64_t limit) {
  std::vector<std::int64_t> out;
  if (limit < 2) return out;
  out.push_back(2);
  // index i stands for 2i+1
  const std::int64_t half = (limit - 1) / 2;
  std::vector<bool> composite(static_cast<std::size_t>(half + 1), false);
  for (std::int64_t i = 1; i <= half; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    const std::int64_t p = 2 * i + 1;
    out.push_back(p);
    for (std::int64_t j = (p * p - 1) / 2; j <= half; j += p) composite[static_cast<std::size_t>(j)] = true;
  }
  return out;
}

PrimeTable::PrimeTable(std::int64_t limit) : limit_(limit) {
  require(limit >= 2, "PrimeTable: limit must be >= 2");
  require(limit <= 4'000'000'000LL, "PrimeTable: limit too large for an in-memory sieve");
  primes_ = sieve_primes(limit);
  for (auto p : primes_) {
    const double lp = std::log(static_cast<double>(p));
    std::int64_t v = p;
    for (int k = 1;; ++k) {
      powers_.push_back({v, p, k, lp});
      if (v > limit / p) break;
      v *= p;
    }
  }
  std::sort(powers_.begin(), powers_.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.value < b.value; });
}

}  // namespace zumm
