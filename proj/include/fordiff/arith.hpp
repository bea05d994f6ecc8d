#pragma once

#include <cstdint>
#include <vector>

namespace fordiff {

// Values handled by the library (set members, query values, range endpoints)
// must satisfy |v| <= kValueRange.  Anything outside raises std::out_of_range
// rather than wrapping.
inline constexpr std::int64_t kValueRange = std::int64_t{1} << 62;

// Deterministic Miller-Rabin, valid for the full 64-bit range.
bool is_prime(std::uint64_t n);

// Primes p with lo <= p <= hi, ascending.  Segmented sieve; the base-prime
// cache is grown on demand and is safe under concurrent readers.
std::vector<std::int64_t> primes_in_range(std::int64_t lo, std::int64_t hi);

// floor(sqrt(x))
std::uint64_t isqrt(std::uint64_t x);
// true iff x = n^2 for some n >= 1
bool is_square(std::int64_t x);
// floor(x^(1/k)) for x >= 0, k >= 1
std::uint64_t ikroot(std::uint64_t x, int k);
// true iff x = n^k for some n >= 1
bool is_kth_power(std::int64_t x, int k);

}  // namespace fordiff
