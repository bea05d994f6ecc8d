#pragma once

// Integer polynomial search utilities: exact preimage solving over Z via
// monotone-piece decomposition.  All arithmetic is 128-bit and
// overflow-checked; a query whose intermediate values cannot be represented
// raises std::out_of_range instead of returning anything wrong.

#include <cstdint>
#include <utility>
#include <vector>

namespace fordiff::polyfn {

using i128 = __int128;

inline constexpr int kMaxDegree = 16;

// Coefficients ascending: c[0] + c[1] t + c[2] t^2 + ...; c.back() != 0
// unless the polynomial is the constant 0 (c = {0}).
struct Poly {
  std::vector<i128> c;
  int degree() const { return static_cast<int>(c.size()) - 1; }
};

i128 eval(const Poly& p, i128 t);  // throws std::out_of_range on overflow
std::int64_t eval_mod(const Poly& p, std::int64_t t, std::int64_t m);  // in [0, m)
Poly derivative(const Poly& p);

// Integer split points bracketing every real root of p'.  Between
// consecutive split points (and beyond the extremes) p is strictly monotone
// over the reals, except on unit gaps that contain no interior integer.
std::vector<i128> turning_points(const Poly& p);

// All integers t with p(t) = v, for deg(p) >= 1.
std::vector<i128> integer_preimages(const Poly& p, std::int64_t v);

// Disjoint ascending integer intervals [a, b] jointly containing exactly the
// t with p(t) in [vlo, vhi], for deg(p) >= 1.
std::vector<std::pair<i128, i128>> preimage_intervals(const Poly& p, std::int64_t vlo,
                                                      std::int64_t vhi);

}  // namespace fordiff::polyfn
