#include "fordiff/formulas.hpp"

#include <algorithm>
#include <array>
#include <ostream>
#include <stdexcept>

#include "fordiff/arith.hpp"
#include "fordiff/cascade.hpp"

namespace fordiff {

namespace {

void check_n(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("formulas are defined for n >= 1");
  if (n > kValueRange) throw std::invalid_argument("n outside the working range");
}

// 1, 1+step, 1+2*step, ... up to n: the residue-class construction whose
// gaps are all multiples of step.
std::vector<std::int64_t> comb(std::int64_t n, std::int64_t step) {
  std::vector<std::int64_t> w;
  w.reserve(static_cast<std::size_t>((n - 1) / step) + 1);
  for (std::int64_t m = 1; m <= n; m += step) w.push_back(m);
  return w;
}

}  // namespace

FormulaResult primes_formula(std::int64_t n) {
  check_n(n);
  FormulaResult r;
  r.n = n;
  r.kind = FormulaKind::Exact;
  bool bump = n == 2 || n == 3 || n == 4 || n == 11 || n == 12;
  r.value = (n + 3) / 4 + (bump ? 1 : 0);
  if (n == 2 || n == 3 || n == 4)
    r.witness = {1, 2};
  else if (n == 11 || n == 12)
    r.witness = {1, 2, 10, 11};
  else
    r.witness = comb(n, 4);
  return r;
}

FormulaResult squares_plus_one_formula(std::int64_t n) {
  check_n(n);
  static constexpr std::array<int, 18> kExceptional = {2,  3,  5,  6,  8,  9,  10, 11, 12,
                                                       17, 18, 20, 21, 23, 24, 25, 26, 27};
  FormulaResult r;
  r.n = n;
  r.kind = FormulaKind::Exact;
  bool bump = n <= 27 && std::find(kExceptional.begin(), kExceptional.end(), n) !=
                             kExceptional.end();
  r.value = (n + 2) / 3 + (bump ? 1 : 0) + (n == 9 || n == 24 ? 1 : 0);
  if (n == 9)
    r.witness = {1, 2, 5, 8, 9};
  else if (n == 24)
    r.witness = {1, 2, 5, 8, 9, 16, 17, 20, 23, 24};
  else if (!bump)
    r.witness = comb(n, 3);
  return r;
}

FormulaResult squares_plus_two_lower_bound(std::int64_t n) {
  check_n(n);
  auto x = ForbiddenSet::squares(2);
  std::int64_t j = (n + 3) / 4;
  FormulaResult r;
  r.n = n;
  r.kind = FormulaKind::LowerBound;

  // Base construction: 1 followed by 2, 6, 10, ..., 4j-6 (j elements).
  auto base = [&](std::int64_t count) {
    std::vector<std::int64_t> w = {1};
    for (std::int64_t i = 0; i + 2 <= count; ++i) w.push_back(2 + 4 * i);
    return w;
  };

  switch (n % 4) {
    case 2:  // n = 4j - 2; one extra element at the top
      r.value = j + 1;
      r.witness = base(j);
      r.witness.push_back(4 * j - 2);
      break;
    case 0:
    case 3:  // n >= 4j - 1; the longer comb fits, sometimes with a rider
      if (x.contains(4 * j - 2)) {
        r.value = j + 1;
        r.witness = base(j + 1);
      } else {
        r.value = j + 2;
        r.witness = base(j + 1);
        r.witness.push_back(4 * j - 1);
      }
      break;
    default:  // n = 4j - 3
      if (x.contains(4 * j - 6)) {
        r.value = j;
        r.witness = base(j);
      } else {
        r.value = j + 1;
        if (n == 1) break;  // 4j - 5 < 1: the construction leaves [1, n]
        r.witness = base(j);
        r.witness.push_back(4 * j - 5);
      }
      break;
  }
  return r;
}

std::vector<std::int64_t> greedy_construct(const ForbiddenSet& x, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("greedy construction needs n >= 1");
  if (n > kValueRange) throw std::invalid_argument("n outside the working range");
  std::vector<std::int64_t> a;
  for (std::int64_t m = 1; m <= n; ++m) {
    bool ok = true;
    for (std::int64_t v : a) {
      if (x.contains(m - v) || x.contains(v - m)) {
        ok = false;
        break;
      }
    }
    if (ok) a.push_back(m);
  }
  return a;
}

std::optional<std::int64_t> find_m_star(const ForbiddenSet& x, std::int64_t max_m) {
  if (max_m < 1) throw std::invalid_argument("modulus cap must be at least 1");
  for (std::int64_t m = 1; m <= max_m; ++m) {
    auto res = x.residues_mod(m);
    if (!std::binary_search(res.begin(), res.end(), std::int64_t{0})) return m;
  }
  return std::nullopt;
}

const char* to_string(VerifyStatus s) {
  switch (s) {
    case VerifyStatus::Match:
      return "match";
    case VerifyStatus::LowerBoundOk:
      return "lower_bound_ok";
    default:
      return "MISMATCH";
  }
}

std::vector<VerifyRow> verify_formula(const std::string& name, std::int64_t n_min,
                                      std::int64_t n_max, const SearchOptions& opts) {
  FormulaResult (*formula)(std::int64_t) = nullptr;
  ForbiddenSet x = ForbiddenSet::primes();
  if (name == "primes") {
    formula = primes_formula;
  } else if (name == "squares+1") {
    formula = squares_plus_one_formula;
    x = ForbiddenSet::squares(1);
  } else if (name == "squares+2-lb") {
    formula = squares_plus_two_lower_bound;
    x = ForbiddenSet::squares(2);
  } else {
    throw std::invalid_argument("unknown formula '" + name +
                                "' (use primes, squares+1, or squares+2-lb)");
  }
  if (n_min < 1 || n_min > n_max)
    throw std::invalid_argument("verification needs 1 <= n_min <= n_max");

  std::vector<VerifyRow> rows;
  rows.reserve(static_cast<std::size_t>(n_max - n_min + 1));
  for (std::int64_t n = n_min; n <= n_max; ++n) {
    auto f = formula(n);
    auto dv = compute_d(x, n, opts);
    VerifyRow row{n, f.value, dv.d, VerifyStatus::Mismatch};
    if (f.value == dv.d)
      row.status = VerifyStatus::Match;
    else if (f.kind == FormulaKind::LowerBound && f.value < dv.d)
      row.status = VerifyStatus::LowerBoundOk;
    rows.push_back(row);
  }
  return rows;
}

void write_verify_csv(const std::vector<VerifyRow>& rows, std::ostream& os) {
  os << "n,formula_value,computed_d,status\n";
  for (const auto& r : rows)
    os << r.n << ',' << r.formula_value << ',' << r.computed_d << ',' << to_string(r.status)
       << '\n';
}

}  // namespace fordiff
