#include "congruent/primes.hpp"

#include <algorithm>

#include "congruent/arith.hpp"
#include "congruent/errors.hpp"

namespace congruent {

namespace {
constexpr std::uint64_t kSegmentBytes = 1 << 18;
}

std::vector<std::uint32_t> sieve_primes(std::uint64_t limit) {
    std::vector<std::uint32_t> out;
    if (limit < 2) return out;
    if (limit > 0xFFFFFFFFull) raise(Errc::TooLarge, "sieve limit exceeds 32-bit primes");
    out.push_back(2);
    if (limit < 3) return out;

    const std::uint64_t root = isqrt(limit);
    std::vector<std::uint32_t> base;
    {
        std::vector<bool> small(root + 1, true);
        for (std::uint64_t i = 3; i <= root; i += 2) {
            if (!small[i]) continue;
            base.push_back(static_cast<std::uint32_t>(i));
            for (std::uint64_t j = i * i; j <= root; j += 2 * i) small[j] = false;
        }
    }

    // Segment s covers odd numbers lo, lo+2, ..., one byte per odd number.
    std::vector<std::uint8_t> seg(kSegmentBytes);
    std::vector<std::uint64_t> next(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) next[i] = static_cast<std::uint64_t>(base[i]) * base[i];

    for (std::uint64_t lo = 3; lo <= limit; lo += 2 * kSegmentBytes) {
        const std::uint64_t hi = std::min(limit, lo + 2 * kSegmentBytes - 1);
        const std::uint64_t len = (hi - lo) / 2 + 1;
        std::fill(seg.begin(), seg.begin() + static_cast<std::ptrdiff_t>(len), 1);
        for (std::size_t i = 0; i < base.size(); ++i) {
            const std::uint64_t p = base[i];
            std::uint64_t j = next[i];
            for (; j <= hi; j += 2 * p) seg[(j - lo) / 2] = 0;
            next[i] = j;
        }
        for (std::uint64_t k = 0; k < len; ++k) {
            if (seg[k]) out.push_back(static_cast<std::uint32_t>(lo + 2 * k));
        }
    }
    return out;
}

PrimeTable::PrimeTable(std::uint64_t limit) : limit_(limit), primes_(sieve_primes(limit)) {}

std::uint64_t PrimeTable::count_upto(std::uint64_t y) const {
    if (y > limit_) raise(Errc::TooLarge, "prime count beyond sieved range");
    return static_cast<std::uint64_t>(
        std::upper_bound(primes_.begin(), primes_.end(), y) - primes_.begin());
}

}  // namespace congruent
