#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fordiff/arith.hpp"

namespace fordiff {

enum class Family { Squares, SquaresShift, Powers, Primes, PrimesShift, PolyZ, PolyP, Explicit };

// An immutable forbidden difference set X.  Supported families:
//   squares, squares+c, squares-c    {n^2 + c : n >= 1}
//   primes, primes+c, primes-c      {p + c : p prime}
//   powers:k                        {n^k : n >= 1}, k >= 2
//   polyz:a_d,...,a_0               {h(t) : t in Z}, h nonzero
//   polyp:a_d,...,a_0               {h(p) : p prime}, h nonzero
//   list:v1,v2,...                  explicit finite set (may be empty)
//   file:<path>                     explicit set, one value per line, '#' comments
//
// Members may be negative; a zero member is legal and is ignored by all
// difference tests.  Members and query values must satisfy |v| <= 2^62.
class ForbiddenSet {
 public:
  static ForbiddenSet squares(std::int64_t shift = 0);
  static ForbiddenSet primes(std::int64_t shift = 0);
  static ForbiddenSet powers(int exponent);
  static ForbiddenSet poly_z(std::vector<std::int64_t> coeffs);  // highest degree first
  static ForbiddenSet poly_p(std::vector<std::int64_t> coeffs);  // highest degree first
  static ForbiddenSet explicit_values(std::vector<std::int64_t> values);

  Family family() const { return fam_; }
  // Canonical grammar form; parse_set_spec(spec()) reproduces the set.
  const std::string& spec() const { return spec_; }

  bool contains(std::int64_t v) const;
  // Members in [lo, hi], ascending, deduplicated.
  std::vector<std::int64_t> elements_in_range(std::int64_t lo, std::int64_t hi) const;
  // X_m = { x mod m : x in X }, ascending, as values in [0, m).
  std::vector<std::int64_t> residues_mod(std::int64_t m) const;

 private:
  ForbiddenSet() = default;
  Family fam_ = Family::Explicit;
  std::int64_t shift_ = 0;                 // squares/primes families
  int exponent_ = 0;                       // powers
  std::vector<std::int64_t> coeffs_;       // polyz/polyp, highest degree first
  std::vector<std::int64_t> values_;       // explicit, sorted unique
  std::string spec_;
};

// Parses the grammar above; throws std::invalid_argument on malformed specs
// and std::out_of_range on values outside the working range.
ForbiddenSet parse_set_spec(const std::string& spec);

struct DiffViolation {
  std::int64_t a, b;   // offending pair, a < b
  std::int64_t diff;   // the member of X equal to b - a or a - b
};

// Pairs of distinct entries whose difference lands in X (at most max_report).
std::vector<DiffViolation> difference_violations(const ForbiddenSet& x,
                                                 std::span<const std::int64_t> values,
                                                 std::size_t max_report = 16);
bool difference_free(const ForbiddenSet& x, std::span<const std::int64_t> values);

// tab[d] = 1 iff neither d nor -d is a member, for 0 <= d <= max_diff
// (tab[0] is always 1: the zero difference is never forbidden).
std::vector<std::uint8_t> allowed_differences(const ForbiddenSet& x, std::int64_t max_diff);

}  // namespace fordiff
