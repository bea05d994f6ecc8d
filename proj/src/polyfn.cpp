#include "polyfn.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <stdexcept>

#include "fordiff/arith.hpp"

namespace fordiff::polyfn {
namespace {

[[noreturn]] void overflow() {
  throw std::out_of_range("polynomial evaluation exceeds 128-bit working range");
}

i128 add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) overflow();
  return r;
}

i128 mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) overflow();
  return r;
}

i128 iabs(i128 v) { return v < 0 ? -v : v; }

int sgn(i128 v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// Fujiwara bound: every real root r of p satisfies
// |r| <= 2 * max_i (|c_{d-i}| / |c_d|)^(1/i).  Computed with integer
// ceilings, so the result only overestimates.
i128 root_bound(const Poly& p) {
  int d = p.degree();
  i128 lead = iabs(p.c[d]);
  i128 best = 1;
  for (int i = 1; i <= d; ++i) {
    i128 ratio = iabs(p.c[d - i]) / lead + 1;
    i128 root;
    if (ratio > i128(UINT64_MAX)) {
      // Crude fallback: ratio^(1/i) <= ratio; only reachable with
      // coefficients near the working-range limit.
      root = ratio;
    } else {
      root = i128(ikroot(static_cast<std::uint64_t>(ratio), i)) + 1;
    }
    best = std::max(best, root);
  }
  return 2 * best + 2;
}

// Least t in [lo, hi] with pred(t), assuming pred is monotone
// (false ... false true ... true); hi + 1 if none.
i128 least_true(i128 lo, i128 hi, const std::function<bool(i128)>& pred) {
  if (lo > hi || !pred(hi)) return hi + 1;
  if (pred(lo)) return lo;
  // Invariant: !pred(lo) && pred(hi).
  while (hi - lo > 1) {
    i128 mid = lo + (hi - lo) / 2;
    (pred(mid) ? hi : lo) = mid;
  }
  return hi;
}

// Invokes f(a, b) for each maximal integer range on which the polynomial is
// strictly monotone-or-tiny, chopping [-B, B] at the turning points.
void for_pieces(const std::vector<i128>& splits, i128 bound,
                const std::function<void(i128, i128)>& f) {
  i128 lo = -bound;
  for (i128 s : splits) {
    if (s < lo || s > bound) continue;
    if (lo <= s) f(lo, s);
    lo = s + 1;
  }
  if (lo <= bound) f(lo, bound);
}

}  // namespace

i128 eval(const Poly& p, i128 t) {
  i128 r = 0;
  for (int i = p.degree(); i >= 0; --i) r = add(mul(r, t), p.c[i]);
  return r;
}

std::int64_t eval_mod(const Poly& p, std::int64_t t, std::int64_t m) {
  if (m <= 0) throw std::invalid_argument("modulus must be positive");
  std::int64_t tm = (t % m + m) % m;
  std::int64_t r = 0;
  for (int i = p.degree(); i >= 0; --i) {
    std::int64_t ci = static_cast<std::int64_t>((p.c[i] % m + m) % m);
    r = static_cast<std::int64_t>((static_cast<unsigned __int128>(r) * tm + ci) % m);
  }
  return r;
}

Poly derivative(const Poly& p) {
  if (p.degree() == 0) return Poly{{0}};
  Poly d;
  d.c.resize(p.c.size() - 1);
  for (int i = 1; i <= p.degree(); ++i) d.c[i - 1] = mul(p.c[i], i);
  return d;
}

std::vector<i128> turning_points(const Poly& p) {
  int deg = p.degree();
  if (deg > kMaxDegree) throw std::invalid_argument("polynomial degree exceeds 16");
  if (deg <= 1) return {};
  Poly d = derivative(p);
  // Splits for d itself; d is strictly monotone between them, so each piece
  // of d carries at most one sign change of d, i.e. one real root.
  std::vector<i128> inner = turning_points(d);
  // Unit gaps around roots of d' may hide roots of d, so keep inner splits.
  std::vector<i128> out = inner;
  i128 bound = root_bound(d);

  auto handle_piece = [&](i128 lo, i128 hi) {
    if (hi - lo <= 3) {
      for (i128 t = lo; t < hi; ++t)
        if (sgn(eval(d, t)) * sgn(eval(d, t + 1)) <= 0) out.push_back(t);
      if (sgn(eval(d, hi)) == 0) out.push_back(hi);
      return;
    }
    int slo = sgn(eval(d, lo)), shi = sgn(eval(d, hi));
    if (slo == 0) out.push_back(lo);
    if (shi == 0) out.push_back(hi);
    if (slo == shi) return;  // monotone piece, no interior crossing
    bool rising = slo < shi;
    i128 t0 = least_true(lo, hi, [&](i128 t) {
      i128 v = eval(d, t);
      return rising ? v >= 0 : v <= 0;
    });
    // Bracket the crossing generously; duplicates are deduped below.
    out.push_back(t0 - 1);
    out.push_back(t0);
    out.push_back(t0 + 1);
  };

  for_pieces(inner, bound, handle_piece);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<i128> integer_preimages(const Poly& p, std::int64_t v) {
  int deg = p.degree();
  if (deg < 1) throw std::invalid_argument("polynomial must be non-constant");
  if (deg > kMaxDegree) throw std::invalid_argument("polynomial degree exceeds 16");
  if (deg == 1) {
    i128 num = i128(v) - p.c[0], den = p.c[1];
    if (num % den != 0) return {};
    return {num / den};
  }
  Poly q = p;
  q.c[0] = add(q.c[0], -i128(v));  // roots of q are preimages of v
  std::vector<i128> splits = turning_points(q);
  i128 bound = root_bound(q);
  std::vector<i128> found;

  auto handle_piece = [&](i128 lo, i128 hi) {
    if (hi - lo <= 3) {
      for (i128 t = lo; t <= hi; ++t)
        if (eval(q, t) == 0) found.push_back(t);
      return;
    }
    int slo = sgn(eval(q, lo)), shi = sgn(eval(q, hi));
    if (slo == 0) found.push_back(lo);
    if (shi == 0) found.push_back(hi);
    if (slo == shi || slo == 0 || shi == 0) {
      // Strictly monotone on [lo, hi]; a sign-matching interior zero would
      // force equal values at distinct points.
      return;
    }
    bool rising = slo < shi;
    i128 t0 = least_true(lo, hi, [&](i128 t) {
      i128 w = eval(q, t);
      return rising ? w >= 0 : w <= 0;
    });
    if (eval(q, t0) == 0) found.push_back(t0);
  };

  for_pieces(splits, bound, handle_piece);
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

std::vector<std::pair<i128, i128>> preimage_intervals(const Poly& p, std::int64_t vlo,
                                                      std::int64_t vhi) {
  int deg = p.degree();
  if (deg < 1) throw std::invalid_argument("polynomial must be non-constant");
  if (deg > kMaxDegree) throw std::invalid_argument("polynomial degree exceeds 16");
  if (vlo > vhi) return {};
  std::vector<std::pair<i128, i128>> out;
  auto emit = [&](i128 a, i128 b) {
    if (a <= b) out.emplace_back(a, b);
  };

  if (deg == 1) {
    i128 c1 = p.c[1], lo = i128(vlo) - p.c[0], hi = i128(vhi) - p.c[0];
    if (c1 < 0) {
      c1 = -c1;
      std::swap(lo, hi);
      lo = -lo;
      hi = -hi;
    }
    auto floordiv = [](i128 a, i128 b) { return a / b - ((a % b != 0 && (a < 0) != (b < 0)) ? 1 : 0); };
    // ceil(lo / c1) .. floor(hi / c1)
    emit(-floordiv(-lo, c1), floordiv(hi, c1));
    return out;
  }

  std::vector<i128> splits = turning_points(p);
  i128 bound = std::max(root_bound([&] {
                          Poly q = p;
                          q.c[0] = add(q.c[0], -i128(vlo));
                          return q;
                        }()),
                        root_bound([&] {
                          Poly q = p;
                          q.c[0] = add(q.c[0], -i128(vhi));
                          return q;
                        }()));
  auto inside = [&](i128 t) {
    i128 w = eval(p, t);
    return w >= vlo && w <= vhi;
  };

  auto handle_piece = [&](i128 lo, i128 hi) {
    if (hi - lo <= 3) {
      i128 a = lo;
      while (a <= hi) {
        if (!inside(a)) {
          ++a;
          continue;
        }
        i128 b = a;
        while (b < hi && inside(b + 1)) ++b;
        emit(a, b);
        a = b + 1;
      }
      return;
    }
    // Strictly monotone on [lo, hi]: the inside set is one interval.
    bool rising = eval(p, lo) < eval(p, hi);
    i128 a, b;
    if (rising) {
      a = least_true(lo, hi, [&](i128 t) { return eval(p, t) >= vlo; });
      b = least_true(lo, hi, [&](i128 t) { return eval(p, t) > vhi; }) - 1;
    } else {
      a = least_true(lo, hi, [&](i128 t) { return eval(p, t) <= vhi; });
      b = least_true(lo, hi, [&](i128 t) { return eval(p, t) < vlo; }) - 1;
    }
    if (a <= hi && b >= lo) emit(std::max(a, lo), std::min(b, hi));
  };

  for_pieces(splits, bound, handle_piece);
  std::sort(out.begin(), out.end());
  // Merge touching or overlapping intervals.
  std::vector<std::pair<i128, i128>> merged;
  for (auto& iv : out) {
    if (!merged.empty() && iv.first <= merged.back().second + 1)
      merged.back().second = std::max(merged.back().second, iv.second);
    else
      merged.push_back(iv);
  }
  return merged;
}

}  // namespace fordiff::polyfn
