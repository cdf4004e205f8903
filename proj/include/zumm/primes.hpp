#pragma once

#include <cstdint>
#include <vector>

namespace zumm {

struct PrimePower {
  std::int64_t value;  ///< p^k
  std::int64_t prime;
  int exponent;
  double log_prime;
};

/// Primes up to a limit and the prime powers p^k <= limit, each with weight ln p.
class PrimeTable {
 public:
  explicit PrimeTable(std::int64_t limit);

  std::int64_t limit() const noexcept { return limit_; }
  const std::vector<std::int64_t>& primes() const noexcept { return primes_; }
  /// Sorted by value.
  const std::vector<PrimePower>& prime_powers() const noexcept { return powers_; }

 private:
  std::int64_t limit_;
  std::vector<std::int64_t> primes_;
  std::vector<PrimePower> powers_;
};

/// Sieve of Eratosthenes on odd numbers.
std::vector<std::int64_t> sieve_primes(std::int64_t limit);

}  // namespace zumm
