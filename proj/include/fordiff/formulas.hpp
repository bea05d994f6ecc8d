#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fordiff/clique.hpp"
#include "fordiff/sets.hpp"

namespace fordiff {

enum class FormulaKind { Exact, LowerBound };

struct FormulaResult {
  std::int64_t n = 0;
  std::int64_t value = 0;
  FormulaKind kind = FormulaKind::Exact;
  std::vector<std::int64_t> witness;  // empty when no construction is known
};

// Largest prime-difference-avoiding subset of [1, n]:
// ceil(n/4), plus one for n in {2, 3, 4, 11, 12}.  Always with witness.
FormulaResult primes_formula(std::int64_t n);

// Forbidden set {k^2 + 1}: ceil(n/3), plus one on an explicit 18-element
// exceptional set, plus one more at n = 9 and n = 24.  The witness is the
// arithmetic construction where one exists; exceptional values other than
// 9 and 24 carry none.
FormulaResult squares_plus_one_formula(std::int64_t n);

// Forbidden set {k^2 + 2}: a constructive lower bound ceil(n/4) + bonus,
// bonus in {0, 1, 2} by the residue of n mod 4 and one set-membership test.
// Known to be exact for n >= 51.  At n = 1 the construction degenerates
// (stated value 2 cannot fit in [1, 1]) and the witness is omitted.
FormulaResult squares_plus_two_lower_bound(std::int64_t n);

// First-fit scan of [1, n]: keep each m compatible with everything kept so
// far.  Size is at least (n-1)/(k+1) with k forbidden gap lengths in [1, n].
std::vector<std::int64_t> greedy_construct(const ForbiddenSet& x, std::int64_t n);

// Least m <= max_m such that no element of x is divisible by m, i.e. the
// residues of x mod m avoid 0; absent if every modulus up to max_m is hit.
std::optional<std::int64_t> find_m_star(const ForbiddenSet& x, std::int64_t max_m);

enum class VerifyStatus { Match, LowerBoundOk, Mismatch };
const char* to_string(VerifyStatus s);

struct VerifyRow {
  std::int64_t n = 0;
  std::int64_t formula_value = 0;
  int computed_d = 0;
  VerifyStatus status = VerifyStatus::Mismatch;
};

// Recompute every value in [n_min, n_max] with the exact solver and grade
// the named formula against it.  Names: "primes", "squares+1",
// "squares+2-lb".  Exact formulas grade match/MISMATCH; lower bounds grade
// match when equal, lower_bound_ok when below, MISMATCH when they overshoot.
std::vector<VerifyRow> verify_formula(const std::string& name, std::int64_t n_min,
                                      std::int64_t n_max, const SearchOptions& opts = {});

// "n,formula_value,computed_d,status" header plus one row per value.
void write_verify_csv(const std::vector<VerifyRow>& rows, std::ostream& os);

}  // namespace fordiff
