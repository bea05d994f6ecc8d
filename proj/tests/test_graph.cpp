#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <sstream>
#include <vector>

#include "fordiff/graph.hpp"
#include "fordiff/sets.hpp"

using fordiff::DiffGraph;
using fordiff::ForbiddenSet;
using fordiff::GraphKind;
using fordiff::parse_set_spec;

namespace {

// Largest difference-avoiding subset of [1, n] by exhaustive subset search.
// Independent of the graph translation; n <= 20.
int exhaustive_best_subset(const ForbiddenSet& x, int n) {
  std::vector<std::vector<bool>> bad(n + 1, std::vector<bool>(n + 1, false));
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b)
      if (a != b && (x.contains(a - b) || x.contains(b - a))) bad[a][b] = true;
  int best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (int a = 1; a <= n && ok; ++a) {
      if (!(mask >> (a - 1) & 1)) continue;
      for (int b = a + 1; b <= n && ok; ++b)
        if ((mask >> (b - 1) & 1) && bad[a][b]) ok = false;
    }
    if (ok) best = std::max(best, std::popcount(mask));
  }
  return best;
}

// Largest clique by exhaustive vertex-subset search; n <= 20.
int exhaustive_max_clique(const DiffGraph& g) {
  int n = g.n();
  int best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      if (!(mask >> i & 1)) continue;
      for (int j = i + 1; j < n && ok; ++j)
        if ((mask >> j & 1) && !g.adjacent(i, j)) ok = false;
    }
    if (ok) best = std::max(best, std::popcount(mask));
  }
  return best;
}

}  // namespace

TEST_CASE("offset graph: pinned small instances") {
  auto primes = ForbiddenSet::primes();

  // n = 8: offsets 1..7 minus the primes 2,3,5,7.
  auto g8 = fordiff::zero_neighborhood_graph(8, primes);
  CHECK(g8.kind() == GraphKind::ZeroNeighborhood);
  CHECK(g8.param() == 8);
  CHECK(g8.labels() == std::vector<std::int64_t>{1, 4, 6});
  // All pairwise gaps (3, 5, 2) are prime, so no edges at all.
  CHECK(g8.edge_count() == 0);

  // n = 12: offsets {1,4,6,8,9,10}; {1,9,10} is a triangle (gaps 8, 9, 1).
  auto g12 = fordiff::zero_neighborhood_graph(12, primes);
  CHECK(g12.labels() == std::vector<std::int64_t>{1, 4, 6, 8, 9, 10});
  auto idx = [&](std::int64_t label) {
    auto& L = g12.labels();
    return static_cast<int>(std::find(L.begin(), L.end(), label) - L.begin());
  };
  CHECK(g12.adjacent(idx(1), idx(9)));
  CHECK(g12.adjacent(idx(1), idx(10)));
  CHECK(g12.adjacent(idx(9), idx(10)));
  CHECK_FALSE(g12.adjacent(idx(1), idx(4)));  // gap 3 is prime
  CHECK(exhaustive_max_clique(g12) == 3);

  // All offsets forbidden: empty graph.
  auto blocked = fordiff::zero_neighborhood_graph(4, parse_set_spec("list:1,2,3"));
  CHECK(blocked.n() == 0);

  // Nothing forbidden: complete graph on n - 1 offsets.
  auto free5 = fordiff::zero_neighborhood_graph(5, parse_set_spec("list:"));
  CHECK(free5.n() == 4);
  CHECK(free5.edge_count() == 6);

  // n = 1: no offsets at all.
  CHECK(fordiff::zero_neighborhood_graph(1, primes).n() == 0);

  // Negative members block offsets too: list:-4 removes offset 4.
  auto gneg = fordiff::zero_neighborhood_graph(6, parse_set_spec("list:-4"));
  CHECK(gneg.labels() == std::vector<std::int64_t>{1, 2, 3, 5});
  CHECK_FALSE(gneg.adjacent(0, 3));  // 5 - 1 = 4, and -4 is forbidden
}

TEST_CASE("offset graph: clique+1 equals exhaustive subset optimum") {
  std::vector<std::string> specs = {"squares",   "squares+2", "primes",  "primes-1",
                                    "powers:3",  "polyz:1,1", "list:1,2", "list:-3,5",
                                    "polyp:1,1"};
  for (const auto& spec : specs) {
    auto x = parse_set_spec(spec);
    for (int n = 1; n <= 14; ++n) {
      auto g = fordiff::zero_neighborhood_graph(n, x);
      REQUIRE(g.n() <= 13);
      int via_graph = exhaustive_max_clique(g) + 1;
      int direct = exhaustive_best_subset(x, n);
      INFO(spec << " n=" << n);
      CHECK(via_graph == direct);
    }
  }
}

TEST_CASE("offset graph: structural invariants") {
  std::vector<std::string> specs = {"squares", "primes+1", "powers:2", "polyz:1,0,-2"};
  for (const auto& spec : specs) {
    auto x = parse_set_spec(spec);
    auto g = fordiff::zero_neighborhood_graph(40, x);
    // Vertex set matches the membership rule directly.
    std::vector<std::int64_t> expect;
    for (std::int64_t i = 1; i <= 39; ++i)
      if (!x.contains(i) && !x.contains(-i)) expect.push_back(i);
    CHECK(g.labels() == expect);
    // Symmetry, irreflexivity, degree/edge bookkeeping.
    std::int64_t twice_edges = 0;
    for (int i = 0; i < g.n(); ++i) {
      CHECK_FALSE(g.adjacent(i, i));
      twice_edges += g.degree(i);
      for (int j = 0; j < g.n(); ++j) CHECK(g.adjacent(i, j) == g.adjacent(j, i));
    }
    CHECK(twice_edges == 2 * g.edge_count());
    // Edge rule matches membership for every pair.
    for (int i = 0; i < g.n(); ++i)
      for (int j = i + 1; j < g.n(); ++j) {
        std::int64_t d = g.labels()[j] - g.labels()[i];
        CHECK(g.adjacent(i, j) == (!x.contains(d) && !x.contains(-d)));
      }
  }
}

TEST_CASE("circulant graph: pinned instances and validation") {
  // Residue 1 forbidden mod 5: only gap-2 chords survive.
  auto c5 = fordiff::circulant_graph(5, {1});
  CHECK(c5.kind() == GraphKind::Circulant);
  CHECK(c5.param() == 5);
  CHECK(c5.n() == 5);
  CHECK(c5.edge_count() == 5);
  CHECK(c5.adjacent(0, 2));
  CHECK_FALSE(c5.adjacent(0, 1));
  CHECK_FALSE(c5.adjacent(4, 0));  // (0 - 4) mod 5 = 1
  CHECK(exhaustive_max_clique(c5) == 2);

  // Empty residue set: complete graph.
  auto c6 = fordiff::circulant_graph(6, {});
  CHECK(c6.edge_count() == 15);

  // Residue 0 does not affect edges between distinct vertices.
  auto c4 = fordiff::circulant_graph(4, {0});
  CHECK(c4.edge_count() == 6);

  // mod 3 with residues {1, 2}: no edges at all.
  CHECK(fordiff::circulant_graph(3, {1, 2}).edge_count() == 0);

  CHECK_THROWS_AS(fordiff::circulant_graph(0, {}), std::invalid_argument);
  CHECK_THROWS_AS(fordiff::circulant_graph(5, {5}), std::invalid_argument);
  CHECK_THROWS_AS(fordiff::circulant_graph(5, {-1}), std::invalid_argument);
}

TEST_CASE("circulant graph: edge rule matches residue arithmetic") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 20; ++trial) {
    std::int64_t m = 2 + static_cast<std::int64_t>(rng() % 30);
    std::vector<std::int64_t> residues;
    for (std::int64_t r = 0; r < m; ++r)
      if (rng() % 3 == 0) residues.push_back(r);
    auto g = fordiff::circulant_graph(m, residues);
    auto in_r = [&](std::int64_t d) {
      return std::find(residues.begin(), residues.end(), ((d % m) + m) % m) != residues.end();
    };
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        if (i == j) continue;
        bool expect = !in_r(i - j) && !in_r(j - i);
        CHECK(g.adjacent(i, j) == expect);
      }
  }
}

TEST_CASE("generic graph construction and bitset rows") {
  DiffGraph g(GraphKind::Generic, 0, {10, 20, 30, 40});
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  g.add_edge(0, 1);  // duplicate must not double-count
  CHECK(g.edge_count() == 2);
  CHECK(g.degree(0) == 1);
  CHECK(g.adjacent(1, 0));
  CHECK_FALSE(g.adjacent(0, 2));
  CHECK(g.words() == 1);
  CHECK((g.row(0)[0] & 0x2) != 0);

  // Row words cover vertices past 64.
  std::vector<std::int64_t> labels(70);
  for (int i = 0; i < 70; ++i) labels[i] = i;
  DiffGraph big(GraphKind::Generic, 0, std::move(labels));
  CHECK(big.words() == 2);
  big.add_edge(0, 69);
  CHECK(big.adjacent(69, 0));
  CHECK((big.row(0)[1] >> 5 & 1) == 1);
}

TEST_CASE("dimacs export") {
  auto g = fordiff::zero_neighborhood_graph(8, ForbiddenSet::primes());
  std::ostringstream os;
  fordiff::write_dimacs(g, os);
  CHECK(os.str() == "p edge 3 0\n");

  DiffGraph h(GraphKind::Generic, 0, {5, 6, 7});
  h.add_edge(0, 2);
  h.add_edge(0, 1);
  std::ostringstream os2;
  fordiff::write_dimacs(h, os2);
  CHECK(os2.str() == "p edge 3 2\ne 1 2\ne 1 3\n");
}
