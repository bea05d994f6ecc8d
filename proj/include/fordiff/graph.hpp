#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "fordiff/sets.hpp"

namespace fordiff {

enum class GraphKind { ZeroNeighborhood, Circulant, Generic };

// Compatibility graph over integer-labelled vertices with packed 64-bit
// adjacency rows.  An edge means the two labels may coexist in one
// difference-avoiding set.
class DiffGraph {
 public:
  DiffGraph(GraphKind kind, std::int64_t param, std::vector<std::int64_t> labels);

  GraphKind kind() const { return kind_; }
  std::int64_t param() const { return param_; }
  int n() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::int64_t>& labels() const { return labels_; }
  int words() const { return words_; }

  void add_edge(int i, int j);
  bool adjacent(int i, int j) const {
    return (adj_[static_cast<std::size_t>(i) * words_ + (j >> 6)] >> (j & 63)) & 1;
  }
  const std::uint64_t* row(int i) const { return adj_.data() + static_cast<std::size_t>(i) * words_; }
  int degree(int i) const;
  std::int64_t edge_count() const { return edges_; }

 private:
  GraphKind kind_;
  std::int64_t param_;
  std::vector<std::int64_t> labels_;
  int words_;
  std::vector<std::uint64_t> adj_;
  std::int64_t edges_ = 0;
};

// Offsets usable next to a fixed base element: vertices are the i in
// [1, n-1] with i and -i both allowed, and an edge joins offsets whose gap
// is allowed in both signs.  The largest difference-avoiding subset of
// [1, n] is exactly (max clique size) + 1; a clique C maps to {1} u (C+1).
DiffGraph zero_neighborhood_graph(std::int64_t n, const ForbiddenSet& x);

// Vertices 0..m-1; an edge joins i and j when neither (i-j) nor (j-i)
// falls in `residues` mod m.  `residues` must lie in [0, m).
DiffGraph circulant_graph(std::int64_t m, const std::vector<std::int64_t>& residues);

// "p edge n m" header plus one "e i j" line per edge, 1-indexed.
void write_dimacs(const DiffGraph& g, std::ostream& os);

}  // namespace fordiff
