#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace congruent {

/// All primes <= limit, ascending, via a segmented odd-only sieve of Eratosthenes.
std::vector<std::uint32_t> sieve_primes(std::uint64_t limit);

/// Sorted prime list with a prime-counting lookup.
class PrimeTable {
  public:
    explicit PrimeTable(std::uint64_t limit);

    std::uint64_t limit() const noexcept { return limit_; }
    std::span<const std::uint32_t> primes() const noexcept { return primes_; }

    /// pi(y) for y <= limit().
    std::uint64_t count_upto(std::uint64_t y) const;

  private:
    std::uint64_t limit_;
    std::vector<std::uint32_t> primes_;
};

}  // namespace congruent
