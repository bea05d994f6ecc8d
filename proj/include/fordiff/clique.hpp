#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fordiff/graph.hpp"

namespace fordiff {

struct SearchBudget {
  std::uint64_t max_nodes = 0;  // 0 = unlimited
  double max_seconds = 0.0;     // 0 = unlimited
};

struct SearchOptions {
  SearchBudget budget;
  int threads = 1;
  bool dynamic_root_order = true;  // re-rank candidates near the root by local degree
  std::vector<int> seed_clique;    // known clique (vertex indices), used as incumbent
  int stop_at = 0;                 // return once a clique of this size is found (0 = never)
};

struct CliqueOutcome {
  int size = 0;
  std::vector<std::int64_t> witness;  // vertex labels, ascending
  std::uint64_t nodes_expanded = 0;
  double seconds = 0.0;
};

// Node or time budget ran out; carries the best clique found so far, which
// is always a valid lower bound with a checkable witness.
class BudgetExhausted : public std::runtime_error {
 public:
  BudgetExhausted(const std::string& what, CliqueOutcome best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const CliqueOutcome& best() const { return best_; }

 private:
  CliqueOutcome best_;
};

// Exact maximum clique by branch and bound with greedy colouring bounds.
// With threads == 1 the result is deterministic: the first optimum reached
// in canonical search order.  With stop_at > 0 the search ends as soon as
// the incumbent reaches that size, skipping the remaining optimality proof.
CliqueOutcome max_clique(const DiffGraph& g, const SearchOptions& opts = {});

// Exhaustive reference solver for cross-checks; requires n <= 32.
CliqueOutcome brute_force_max_clique(const DiffGraph& g);

}  // namespace fordiff
