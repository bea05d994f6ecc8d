#include "fordiff/sets.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "polyfn.hpp"

namespace fordiff {

namespace {

using i128 = __int128;

void check_range(std::int64_t v, const char* what) {
  if (v > kValueRange || v < -kValueRange)
    throw std::out_of_range(std::string(what) + " outside working range [-2^62, 2^62]");
}

std::int64_t parse_int(std::string_view s) {
  if (s.size() >= 2 && s[0] == '+' && s[1] >= '0' && s[1] <= '9') s.remove_prefix(1);
  std::int64_t v = 0;
  const char* b = s.data();
  const char* e = b + s.size();
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec == std::errc::result_out_of_range)
    throw std::out_of_range("integer outside working range: " + std::string(s));
  if (ec != std::errc{} || p != e)
    throw std::invalid_argument("malformed integer: '" + std::string(s) + "'");
  check_range(v, "value");
  return v;
}

std::vector<std::int64_t> parse_int_list(std::string_view s) {
  std::vector<std::int64_t> out;
  if (s.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = s.find(',', pos);
    std::string_view tok = s.substr(pos, comma == std::string_view::npos ? comma : comma - pos);
    out.push_back(parse_int(tok));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string join_ints(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

std::string shift_suffix(std::int64_t c) {
  if (c == 0) return "";
  return (c > 0 ? "+" : "") + std::to_string(c);
}

polyfn::Poly ascending(const std::vector<std::int64_t>& highest_first) {
  polyfn::Poly p;
  p.c.assign(highest_first.rbegin(), highest_first.rend());
  return p;
}

// Primes dividing m, by trial division.
std::vector<std::int64_t> prime_divisors(std::int64_t m) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      out.push_back(p);
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) out.push_back(m);
  return out;
}

std::vector<std::int64_t> sorted_unique(std::vector<std::int64_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

ForbiddenSet ForbiddenSet::squares(std::int64_t shift) {
  check_range(shift, "shift");
  ForbiddenSet x;
  x.fam_ = shift == 0 ? Family::Squares : Family::SquaresShift;
  x.shift_ = shift;
  x.spec_ = "squares" + shift_suffix(shift);
  return x;
}

ForbiddenSet ForbiddenSet::primes(std::int64_t shift) {
  check_range(shift, "shift");
  ForbiddenSet x;
  x.fam_ = shift == 0 ? Family::Primes : Family::PrimesShift;
  x.shift_ = shift;
  x.spec_ = "primes" + shift_suffix(shift);
  return x;
}

ForbiddenSet ForbiddenSet::powers(int exponent) {
  if (exponent < 2 || exponent > 62)
    throw std::invalid_argument("powers: exponent must be in [2, 62]");
  ForbiddenSet x;
  x.fam_ = Family::Powers;
  x.exponent_ = exponent;
  x.spec_ = "powers:" + std::to_string(exponent);
  return x;
}

namespace {
std::vector<std::int64_t> normalize_poly(std::vector<std::int64_t> coeffs, const char* fam) {
  for (std::int64_t c : coeffs) check_range(c, "coefficient");
  auto it = std::find_if(coeffs.begin(), coeffs.end(), [](std::int64_t c) { return c != 0; });
  coeffs.erase(coeffs.begin(), it);  // strip leading zeros
  if (coeffs.empty())
    throw std::invalid_argument(std::string(fam) + ": polynomial must be nonzero");
  return coeffs;
}
}  // namespace

ForbiddenSet ForbiddenSet::poly_z(std::vector<std::int64_t> coeffs) {
  ForbiddenSet x;
  x.fam_ = Family::PolyZ;
  x.coeffs_ = normalize_poly(std::move(coeffs), "polyz");
  x.spec_ = "polyz:" + join_ints(x.coeffs_);
  return x;
}

ForbiddenSet ForbiddenSet::poly_p(std::vector<std::int64_t> coeffs) {
  ForbiddenSet x;
  x.fam_ = Family::PolyP;
  x.coeffs_ = normalize_poly(std::move(coeffs), "polyp");
  x.spec_ = "polyp:" + join_ints(x.coeffs_);
  return x;
}

ForbiddenSet ForbiddenSet::explicit_values(std::vector<std::int64_t> values) {
  for (std::int64_t v : values) check_range(v, "member");
  ForbiddenSet x;
  x.fam_ = Family::Explicit;
  x.values_ = sorted_unique(std::move(values));
  x.spec_ = "list:" + join_ints(x.values_);
  return x;
}

bool ForbiddenSet::contains(std::int64_t v) const {
  check_range(v, "query value");
  switch (fam_) {
    case Family::Squares:
    case Family::SquaresShift: {
      i128 w = i128(v) - shift_;
      if (w < 1 || w > (i128(1) << 63)) return false;
      std::uint64_t uw = static_cast<std::uint64_t>(w);
      std::uint64_t r = isqrt(uw);
      return r * r == uw;
    }
    case Family::Powers:
      return v >= 1 && is_kth_power(v, exponent_);
    case Family::Primes:
    case Family::PrimesShift: {
      i128 w = i128(v) - shift_;
      if (w < 2 || w > (i128(1) << 63)) return false;
      return is_prime(static_cast<std::uint64_t>(w));
    }
    case Family::PolyZ: {
      if (coeffs_.size() == 1) return v == coeffs_[0];
      return !polyfn::integer_preimages(ascending(coeffs_), v).empty();
    }
    case Family::PolyP: {
      if (coeffs_.size() == 1) return v == coeffs_[0];
      for (i128 t : polyfn::integer_preimages(ascending(coeffs_), v))
        if (t >= 2 && t < (i128(1) << 63) && is_prime(static_cast<std::uint64_t>(t))) return true;
      return false;
    }
    case Family::Explicit:
      return std::binary_search(values_.begin(), values_.end(), v);
  }
  return false;
}

std::vector<std::int64_t> ForbiddenSet::elements_in_range(std::int64_t lo, std::int64_t hi) const {
  check_range(lo, "range endpoint");
  check_range(hi, "range endpoint");
  std::vector<std::int64_t> out;
  if (lo > hi) return out;
  switch (fam_) {
    case Family::Squares:
    case Family::SquaresShift: {
      i128 wlo = std::max<i128>(i128(lo) - shift_, 1);
      i128 whi = i128(hi) - shift_;
      if (whi < wlo) break;
      std::uint64_t n = isqrt(static_cast<std::uint64_t>(wlo));
      if (i128(n) * n < wlo) ++n;
      if (n == 0) n = 1;
      for (; i128(n) * n <= whi; ++n)
        out.push_back(static_cast<std::int64_t>(i128(n) * n + shift_));
      break;
    }
    case Family::Powers: {
      if (hi < 1) break;
      for (std::uint64_t n = 1;; ++n) {
        i128 v = 1;
        for (int i = 0; i < exponent_; ++i) v *= n;
        if (v > hi) break;
        if (v >= lo) out.push_back(static_cast<std::int64_t>(v));
      }
      break;
    }
    case Family::Primes:
    case Family::PrimesShift: {
      i128 plo = i128(lo) - shift_, phi = i128(hi) - shift_;
      plo = std::max<i128>(plo, 2);
      phi = std::min<i128>(phi, kValueRange);
      if (phi < plo) break;
      for (std::int64_t p :
           primes_in_range(static_cast<std::int64_t>(plo), static_cast<std::int64_t>(phi)))
        out.push_back(p + shift_);
      break;
    }
    case Family::PolyZ: {
      if (coeffs_.size() == 1) {
        if (coeffs_[0] >= lo && coeffs_[0] <= hi) out.push_back(coeffs_[0]);
        break;
      }
      auto p = ascending(coeffs_);
      for (auto [a, b] : polyfn::preimage_intervals(p, lo, hi))
        for (i128 t = a; t <= b; ++t)
          out.push_back(static_cast<std::int64_t>(polyfn::eval(p, t)));
      out = sorted_unique(std::move(out));
      break;
    }
    case Family::PolyP: {
      if (coeffs_.size() == 1) {
        if (coeffs_[0] >= lo && coeffs_[0] <= hi) out.push_back(coeffs_[0]);
        break;
      }
      auto p = ascending(coeffs_);
      for (auto [a, b] : polyfn::preimage_intervals(p, lo, hi)) {
        a = std::max<i128>(a, 2);
        b = std::min<i128>(b, kValueRange);
        if (a > b) continue;
        for (std::int64_t t : primes_in_range(static_cast<std::int64_t>(a),
                                              static_cast<std::int64_t>(b)))
          out.push_back(static_cast<std::int64_t>(polyfn::eval(p, t)));
      }
      out = sorted_unique(std::move(out));
      break;
    }
    case Family::Explicit: {
      auto b = std::lower_bound(values_.begin(), values_.end(), lo);
      auto e = std::upper_bound(values_.begin(), values_.end(), hi);
      out.assign(b, e);
      break;
    }
  }
  return out;
}

std::vector<std::int64_t> ForbiddenSet::residues_mod(std::int64_t m) const {
  if (m < 1) throw std::invalid_argument("residues_mod: modulus must be >= 1");
  std::set<std::int64_t> res;
  auto poly_for_family = [&]() -> polyfn::Poly {
    switch (fam_) {
      case Family::Squares:
      case Family::SquaresShift:
        return polyfn::Poly{{shift_, 0, 1}};
      case Family::Powers: {
        polyfn::Poly p;
        p.c.assign(static_cast<std::size_t>(exponent_) + 1, 0);
        p.c.back() = 1;
        return p;
      }
      default:
        return ascending(coeffs_);
    }
  };
  switch (fam_) {
    case Family::Squares:
    case Family::SquaresShift:
    case Family::Powers:
    case Family::PolyZ: {
      auto p = poly_for_family();
      for (std::int64_t t = 0; t < m; ++t) res.insert(polyfn::eval_mod(p, t, m));
      break;
    }
    case Family::Primes:
    case Family::PrimesShift: {
      // A prime is either a unit mod m or a divisor of m, and every unit
      // class contains primes, so X_m is exactly the image of both parts.
      std::int64_t sh = (shift_ % m + m) % m;
      for (std::int64_t u = 0; u < m; ++u)
        if (std::gcd(u, m) == 1) res.insert((u + sh) % m);
      for (std::int64_t p : prime_divisors(m))
        res.insert(static_cast<std::int64_t>(((i128(p) + shift_) % m + m) % m));
      break;
    }
    case Family::PolyP: {
      auto p = poly_for_family();
      for (std::int64_t u = 0; u < m; ++u)
        if (std::gcd(u, m) == 1) res.insert(polyfn::eval_mod(p, u, m));
      for (std::int64_t q : prime_divisors(m)) res.insert(polyfn::eval_mod(p, q, m));
      break;
    }
    case Family::Explicit: {
      for (std::int64_t v : values_) res.insert((v % m + m) % m);
      break;
    }
  }
  return {res.begin(), res.end()};
}

ForbiddenSet parse_set_spec(const std::string& spec) {
  auto starts = [&](std::string_view prefix) {
    return spec.size() >= prefix.size() && std::string_view(spec).substr(0, prefix.size()) == prefix;
  };
  if (spec == "squares") return ForbiddenSet::squares();
  if (spec == "primes") return ForbiddenSet::primes();
  if (starts("squares+") || starts("squares-")) {
    std::int64_t c = parse_int(std::string_view(spec).substr(7));
    return ForbiddenSet::squares(c);
  }
  if (starts("primes+") || starts("primes-")) {
    std::int64_t c = parse_int(std::string_view(spec).substr(6));
    return ForbiddenSet::primes(c);
  }
  if (starts("powers:")) {
    std::int64_t k = parse_int(std::string_view(spec).substr(7));
    if (k < 2 || k > 62) throw std::invalid_argument("powers: exponent must be in [2, 62]");
    return ForbiddenSet::powers(static_cast<int>(k));
  }
  if (starts("polyz:")) {
    auto coeffs = parse_int_list(std::string_view(spec).substr(6));
    if (coeffs.empty()) throw std::invalid_argument("polyz: empty coefficient list");
    return ForbiddenSet::poly_z(std::move(coeffs));
  }
  if (starts("polyp:")) {
    auto coeffs = parse_int_list(std::string_view(spec).substr(6));
    if (coeffs.empty()) throw std::invalid_argument("polyp: empty coefficient list");
    return ForbiddenSet::poly_p(std::move(coeffs));
  }
  if (starts("list:")) {
    return ForbiddenSet::explicit_values(parse_int_list(std::string_view(spec).substr(5)));
  }
  if (starts("file:")) {
    std::string path = spec.substr(5);
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open set file: " + path);
    std::vector<std::int64_t> values;
    std::string line;
    while (std::getline(f, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::size_t b = line.find_first_not_of(" \t\r\n");
      if (b == std::string::npos) continue;
      std::size_t e = line.find_last_not_of(" \t\r\n");
      values.push_back(parse_int(std::string_view(line).substr(b, e - b + 1)));
    }
    return ForbiddenSet::explicit_values(std::move(values));
  }
  throw std::invalid_argument("unknown set spec: '" + spec + "'");
}

std::vector<DiffViolation> difference_violations(const ForbiddenSet& x,
                                                 std::span<const std::int64_t> values,
                                                 std::size_t max_report) {
  std::vector<std::int64_t> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  std::vector<DiffViolation> out;
  // For large witnesses, one membership table beats pairwise contains().
  bool tabulate = false;
  std::unordered_set<std::int64_t> members;
  if (v.size() > 512) {
    i128 span = i128(v.back()) - v.front();
    if (span <= kValueRange) {
      tabulate = true;
      auto s = static_cast<std::int64_t>(span);
      for (std::int64_t e : x.elements_in_range(-s, s)) members.insert(e);
    }
  }
  auto in_x = [&](i128 d) {
    if (d > kValueRange || d < -kValueRange) return false;  // members are range-bounded
    auto dd = static_cast<std::int64_t>(d);
    return tabulate ? members.count(dd) > 0 : x.contains(dd);
  };
  for (std::size_t i = 0; i < v.size() && out.size() < max_report; ++i) {
    for (std::size_t j = i + 1; j < v.size() && out.size() < max_report; ++j) {
      if (v[j] == v[i]) continue;
      i128 d = i128(v[j]) - v[i];
      if (in_x(d)) out.push_back({v[i], v[j], static_cast<std::int64_t>(d)});
      else if (in_x(-d)) out.push_back({v[i], v[j], static_cast<std::int64_t>(-d)});
    }
  }
  return out;
}

bool difference_free(const ForbiddenSet& x, std::span<const std::int64_t> values) {
  return difference_violations(x, values, 1).empty();
}

std::vector<std::uint8_t> allowed_differences(const ForbiddenSet& x, std::int64_t max_diff) {
  if (max_diff < 0) throw std::invalid_argument("allowed_differences: negative bound");
  std::vector<std::uint8_t> tab(static_cast<std::size_t>(max_diff) + 1, 1);
  if (max_diff == 0) return tab;
  for (std::int64_t e : x.elements_in_range(1, max_diff)) tab[static_cast<std::size_t>(e)] = 0;
  for (std::int64_t e : x.elements_in_range(-max_diff, -1)) tab[static_cast<std::size_t>(-e)] = 0;
  return tab;
}

}  // namespace fordiff
