#include "fordiff/arith.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace fordiff {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  // This base set decides primality exactly for all n < 2^64.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) { witness = false; break; }
    }
    if (witness) return false;
  }
  return true;
}

namespace {

// Plain sieve for the base primes of the segmented pass.  Stateless, so
// concurrent callers never share mutable data.
std::vector<std::int64_t> base_primes_upto(std::int64_t limit) {
  std::int64_t n = std::max<std::int64_t>(limit, 16);
  std::vector<char> comp(static_cast<std::size_t>(n) + 1, 0);
  std::vector<std::int64_t> out;
  for (std::int64_t i = 2; i <= n; ++i) {
    if (comp[static_cast<std::size_t>(i)]) continue;
    if (i <= limit) out.push_back(i);
    for (std::int64_t j = i * i; j <= n; j += i) comp[static_cast<std::size_t>(j)] = 1;
  }
  return out;
}

}  // namespace

std::vector<std::int64_t> primes_in_range(std::int64_t lo, std::int64_t hi) {
  if (std::llabs(lo) > kValueRange || std::llabs(hi) > kValueRange)
    throw std::out_of_range("primes_in_range: endpoint outside working range");
  lo = std::max<std::int64_t>(lo, 2);
  if (hi < lo) return {};
  std::vector<std::int64_t> out;
  std::int64_t root = static_cast<std::int64_t>(isqrt(static_cast<u64>(hi)));
  auto base = base_primes_upto(root);
  constexpr std::int64_t kBlock = 1 << 20;
  std::vector<char> seg;
  for (std::int64_t start = lo; start <= hi; start += kBlock) {
    std::int64_t stop = std::min(hi, start + kBlock - 1);
    seg.assign(static_cast<std::size_t>(stop - start + 1), 1);
    for (std::int64_t p : base) {
      if (p * p > stop) break;
      std::int64_t first = std::max(p * p, (start + p - 1) / p * p);
      for (std::int64_t j = first; j <= stop; j += p) seg[static_cast<std::size_t>(j - start)] = 0;
    }
    for (std::int64_t v = start; v <= stop; ++v)
      if (seg[static_cast<std::size_t>(v - start)] && v >= 2) out.push_back(v);
  }
  return out;
}

std::uint64_t isqrt(u64 x) {
  if (x == 0) return 0;
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(x)));
  while (r > 0 && r > x / r) --r;
  while ((r + 1) <= x / (r + 1)) ++r;
  return r;
}

bool is_square(std::int64_t x) {
  if (x < 1) return false;
  u64 r = isqrt(static_cast<u64>(x));
  return r * r == static_cast<u64>(x);
}

std::uint64_t ikroot(u64 x, int k) {
  if (k <= 0) throw std::invalid_argument("ikroot: k must be positive");
  if (k == 1 || x <= 1) return x;
  if (k >= 64) return 1;
  u64 r = static_cast<u64>(std::pow(static_cast<double>(x), 1.0 / k));
  auto pow_leq = [&](u64 b) {  // b^k <= x without overflow
    u128 acc = 1;
    for (int i = 0; i < k; ++i) {
      acc *= b;
      if (acc > x) return false;
    }
    return true;
  };
  while (r > 1 && !pow_leq(r)) --r;
  while (pow_leq(r + 1)) ++r;
  return r;
}

bool is_kth_power(std::int64_t x, int k) {
  if (x < 1) return false;
  u64 r = ikroot(static_cast<u64>(x), k);
  u128 acc = 1;
  for (int i = 0; i < k; ++i) acc *= r;
  return acc == static_cast<u128>(x);
}

}  // namespace fordiff
