#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fordiff/clique.hpp"
#include "fordiff/sets.hpp"

namespace fordiff {

// Exact nonnegative rational, always reduced with positive denominator.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Ratio of(std::int64_t num, std::int64_t den);
  std::string str() const;  // "num/den"

  friend bool operator==(const Ratio&, const Ratio&) = default;
  friend bool operator<(const Ratio& a, const Ratio& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
};

// Modular density of one modulus: the largest subset of Z/m whose pairwise
// differences (both directions) avoid the residues of x mod m.  When 0 is
// itself a forbidden residue — some element of x is divisible by m — the
// density is 0 by convention, since no residue class can then be lifted.
struct DensityRecord {
  std::int64_t m = 0;
  std::vector<std::int64_t> residues;  // forbidden residues of x mod m
  int d = 0;
  std::vector<std::int64_t> witness;  // attaining subset of Z/m, starts at 0
  Ratio ratio;                        // d/m, reduced
};

inline constexpr std::int64_t kDefaultDensityCap = 512;

// Exact density via a maximum clique in the circulant compatibility graph,
// cut down by symmetry to the common neighbourhood of residue 0.
DensityRecord local_density(const ForbiddenSet& x, std::int64_t m, const SearchOptions& opts = {},
                            std::int64_t cap = kDefaultDensityCap);

// Densities of every modulus 1..max_m in order.
std::vector<DensityRecord> scan_densities(const ForbiddenSet& x, std::int64_t max_m,
                                          const SearchOptions& opts = {},
                                          std::int64_t cap = kDefaultDensityCap);

// The record with the largest ratio d/m among moduli 1..max_m (ties go to
// the smaller modulus).  Lifting its witness shows the extremal sets keep
// at least this proportion of [1, n] for arbitrarily large n.
DensityRecord mu_lower_scan(const ForbiddenSet& x, std::int64_t max_m,
                            const SearchOptions& opts = {},
                            std::int64_t cap = kDefaultDensityCap);

struct IntersectiveReport {
  bool intersective = false;                       // every modulus is hit
  std::optional<std::int64_t> first_failing_m;     // least m with no multiple in x
};

// Does x contain a multiple of every m in 1..max_m?  (Those are exactly the
// moduli whose density is forced to 0.)
IntersectiveReport locally_intersective_up_to(const ForbiddenSet& x, std::int64_t max_m);

// Blow a modular witness up to k periods inside [1, k*m]: residue r and
// round j map to r + 1 + j*m.  The result is a valid difference-avoiding
// subset of size k*d, certifying the density lower bound at n = k*m.
std::vector<std::int64_t> lift_density_witness(const DensityRecord& record, std::int64_t k);

// "m,d,ratio,witness" header; witness residues joined by ';'.
void write_density_csv(const std::vector<DensityRecord>& rows, std::ostream& os);

}  // namespace fordiff
