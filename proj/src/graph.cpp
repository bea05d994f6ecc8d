#include "fordiff/graph.hpp"

#include <bit>
#include <ostream>
#include <stdexcept>

namespace fordiff {

DiffGraph::DiffGraph(GraphKind kind, std::int64_t param, std::vector<std::int64_t> labels)
    : kind_(kind), param_(param), labels_(std::move(labels)) {
  words_ = static_cast<int>((labels_.size() + 63) / 64);
  adj_.assign(labels_.size() * static_cast<std::size_t>(words_), 0);
}

void DiffGraph::add_edge(int i, int j) {
  if (i == j) throw std::invalid_argument("self loops are not allowed");
  if (adjacent(i, j)) return;
  adj_[static_cast<std::size_t>(i) * words_ + (j >> 6)] |= std::uint64_t{1} << (j & 63);
  adj_[static_cast<std::size_t>(j) * words_ + (i >> 6)] |= std::uint64_t{1} << (i & 63);
  ++edges_;
}

int DiffGraph::degree(int i) const {
  int d = 0;
  const std::uint64_t* r = row(i);
  for (int w = 0; w < words_; ++w) d += std::popcount(r[w]);
  return d;
}

DiffGraph zero_neighborhood_graph(std::int64_t n, const ForbiddenSet& x) {
  if (n < 1) throw std::invalid_argument("interval length must be >= 1");
  if (n - 1 > kValueRange) throw std::out_of_range("interval exceeds working range");
  // allowed[d] == 1 iff neither d nor -d is forbidden.
  auto allowed = allowed_differences(x, n - 1);
  std::vector<std::int64_t> labels;
  for (std::int64_t i = 1; i <= n - 1; ++i)
    if (allowed[static_cast<std::size_t>(i)]) labels.push_back(i);
  DiffGraph g(GraphKind::ZeroNeighborhood, n, std::move(labels));
  for (int i = 0; i < g.n(); ++i)
    for (int j = i + 1; j < g.n(); ++j)
      if (allowed[static_cast<std::size_t>(g.labels()[j] - g.labels()[i])]) g.add_edge(i, j);
  return g;
}

DiffGraph circulant_graph(std::int64_t m, const std::vector<std::int64_t>& residues) {
  if (m < 1) throw std::invalid_argument("modulus must be >= 1");
  std::vector<std::uint8_t> forbidden(static_cast<std::size_t>(m), 0);
  for (std::int64_t r : residues) {
    if (r < 0 || r >= m) throw std::invalid_argument("residue outside [0, m)");
    forbidden[static_cast<std::size_t>(r)] = 1;
  }
  std::vector<std::int64_t> labels(static_cast<std::size_t>(m));
  for (std::int64_t i = 0; i < m; ++i) labels[static_cast<std::size_t>(i)] = i;
  DiffGraph g(GraphKind::Circulant, m, std::move(labels));
  for (int i = 0; i < g.n(); ++i)
    for (int j = i + 1; j < g.n(); ++j) {
      std::int64_t d = j - i;
      if (!forbidden[static_cast<std::size_t>(d)] &&
          !forbidden[static_cast<std::size_t>(m - d)])
        g.add_edge(i, j);
    }
  return g;
}

void write_dimacs(const DiffGraph& g, std::ostream& os) {
  os << "p edge " << g.n() << ' ' << g.edge_count() << '\n';
  for (int i = 0; i < g.n(); ++i)
    for (int j = i + 1; j < g.n(); ++j)
      if (g.adjacent(i, j)) os << "e " << i + 1 << ' ' << j + 1 << '\n';
}

}  // namespace fordiff
