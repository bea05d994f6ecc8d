#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "fordiff/clique.hpp"
#include "fordiff/sets.hpp"

namespace fordiff {

// One solved instance: the largest difference-avoiding subset of [1, n].
struct DValue {
  std::int64_t n = 0;
  int d = 0;
  std::vector<std::int64_t> witness;  // sorted, starts at 1, inside [1, n]
  std::uint64_t nodes_expanded = 0;
  double seconds = 0.0;
};

// Exact value via the offset graph and the clique engine.  `opts` is passed
// through to the search (budget, threads, ...); seed_clique/stop_at refer to
// graph vertices and clique sizes and are normally left alone by callers.
DValue compute_d(const ForbiddenSet& x, std::int64_t n, const SearchOptions& opts = {});

// Same value through the exhaustive reference solver; the offset graph must
// have at most 32 vertices.
DValue compute_d_oracle(const ForbiddenSet& x, std::int64_t n);

// A certified constant run: the value is d for every n in [n_lo, n_hi].
// The witness (when present) attains d inside [1, n_lo].
struct CascadeRecord {
  std::string set_spec;
  std::int64_t n_lo = 0;
  std::int64_t n_hi = 0;
  int d = 0;
  std::vector<std::int64_t> witness;
};

struct CascadeResult {
  std::vector<CascadeRecord> records;  // maximal constant rows, ascending
  int solves = 0;
  std::uint64_t nodes_expanded = 0;
  double seconds = 0.0;
};

// A per-solve budget ran out mid-sweep.  Rows certified before the failing
// solve (already flushed to the log, if any) ride along for inspection.
class CascadeInterrupted : public std::runtime_error {
 public:
  CascadeInterrupted(const std::string& what, std::vector<CascadeRecord> completed)
      : std::runtime_error(what), completed_(std::move(completed)) {}
  const std::vector<CascadeRecord>& completed() const { return completed_; }

 private:
  std::vector<CascadeRecord> completed_;
};

// Top-down table sweep over [n_min, n_max].  Each solve at n certifies the
// constant run [max(witness), n], and the sweep restarts just below it; the
// previous witness (minus its top element) seeds the next solve, which may
// stop as soon as it matches the only value monotonicity still allows.
//
// With a log path, every record is appended as one JSON line and flushed
// before the sweep moves on.  With resume, the log is validated (same set
// spec, same n_max, contiguous ranges, checkable witnesses) and the sweep
// continues below the last logged record instead of starting over.
CascadeResult cascade(const ForbiddenSet& x, std::int64_t n_min, std::int64_t n_max,
                      const SearchOptions& solver = {}, const std::string& log_path = "",
                      bool resume = false);

// Records of a JSON-lines log, in file order (descending n_lo as written).
std::vector<CascadeRecord> load_cascade_log(const std::string& path);

// Merge contiguous records into maximal constant rows, ascending by n_lo.
// Runs with equal d collapse keeping the lowest witness; gaps or overlaps
// raise std::invalid_argument.
std::vector<CascadeRecord> compress_table(std::vector<CascadeRecord> records);

// Same, from per-n values: values[i] = value at n_lo + i.  No witnesses.
std::vector<CascadeRecord> compress_table(const std::string& set_spec, std::int64_t n_lo,
                                          const std::vector<int>& values);

// "n_lo,n_hi,d" header plus one row per record.
void write_table_csv(const std::vector<CascadeRecord>& rows, std::ostream& os);
// Two-column table; multi-n rows render as "a <= N <= b".
void write_table_markdown(const std::vector<CascadeRecord>& rows, std::ostream& os);

}  // namespace fordiff
