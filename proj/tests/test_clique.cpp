#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "fordiff/clique.hpp"
#include "fordiff/graph.hpp"
#include "fordiff/sets.hpp"

using fordiff::CliqueOutcome;
using fordiff::DiffGraph;
using fordiff::GraphKind;
using fordiff::SearchOptions;

namespace {

// Largest clique by exhaustive vertex-subset scan; independent of both
// solvers under test.  n <= 20.
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

DiffGraph random_graph(int n, double p, std::uint64_t seed, std::int64_t label_base = 0) {
  std::vector<std::int64_t> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = label_base + i;
  DiffGraph g(GraphKind::Generic, 0, std::move(labels));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (u(rng) < p) g.add_edge(i, j);
  return g;
}

// Witness labels must name a genuine clique of the claimed size.
void require_valid(const DiffGraph& g, const CliqueOutcome& out) {
  REQUIRE(out.witness.size() == static_cast<std::size_t>(out.size));
  REQUIRE(std::is_sorted(out.witness.begin(), out.witness.end()));
  std::vector<int> idx;
  for (std::int64_t label : out.witness) {
    auto it = std::find(g.labels().begin(), g.labels().end(), label);
    REQUIRE(it != g.labels().end());
    idx.push_back(static_cast<int>(it - g.labels().begin()));
  }
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j) REQUIRE(g.adjacent(idx[i], idx[j]));
}

}  // namespace

TEST_CASE("pinned graphs") {
  // Empty graph.
  DiffGraph empty(GraphKind::Generic, 0, {});
  auto out = fordiff::max_clique(empty);
  CHECK(out.size == 0);
  CHECK(out.witness.empty());

  // Single vertex.
  DiffGraph one(GraphKind::Generic, 0, {7});
  out = fordiff::max_clique(one);
  CHECK(out.size == 1);
  CHECK(out.witness == std::vector<std::int64_t>{7});

  // Triangle plus pendant.
  DiffGraph tri(GraphKind::Generic, 0, {0, 1, 2, 3});
  tri.add_edge(0, 1);
  tri.add_edge(1, 2);
  tri.add_edge(0, 2);
  tri.add_edge(2, 3);
  out = fordiff::max_clique(tri);
  CHECK(out.size == 3);
  CHECK(out.witness == std::vector<std::int64_t>{0, 1, 2});
  require_valid(tri, out);

  // Complete K8 across a word boundary check comes later; plain K8 here.
  DiffGraph k8(GraphKind::Generic, 0, {0, 1, 2, 3, 4, 5, 6, 7});
  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j) k8.add_edge(i, j);
  out = fordiff::max_clique(k8);
  CHECK(out.size == 8);

  // C5: best is an edge.
  DiffGraph c5(GraphKind::Generic, 0, {0, 1, 2, 3, 4});
  for (int i = 0; i < 5; ++i) c5.add_edge(i, (i + 1) % 5);
  CHECK(fordiff::max_clique(c5).size == 2);

  // Petersen graph is triangle-free.
  DiffGraph pet(GraphKind::Generic, 0, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
  for (int i = 0; i < 5; ++i) {
    pet.add_edge(i, (i + 1) % 5);
    pet.add_edge(i, i + 5);
    pet.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  out = fordiff::max_clique(pet);
  CHECK(out.size == 2);
  require_valid(pet, out);

  // Complete bipartite K33.
  DiffGraph k33(GraphKind::Generic, 0, {0, 1, 2, 3, 4, 5});
  for (int i = 0; i < 3; ++i)
    for (int j = 3; j < 6; ++j) k33.add_edge(i, j);
  CHECK(fordiff::max_clique(k33).size == 2);
}

TEST_CASE("solver matches exhaustive search on random graphs") {
  int case_id = 0;
  for (int n : {1, 2, 5, 9, 13, 17}) {
    for (double p : {0.1, 0.35, 0.6, 0.9}) {
      auto g = random_graph(n, p, 1000 + 17 * case_id++, 50);
      int truth = exhaustive_max_clique(g);
      auto out = fordiff::max_clique(g);
      INFO("n=" << n << " p=" << p);
      CHECK(out.size == truth);
      require_valid(g, out);
      CHECK(fordiff::brute_force_max_clique(g).size == truth);
    }
  }
}

TEST_CASE("brute force agrees and caps at 32 vertices") {
  auto g = random_graph(33, 0.5, 5);
  CHECK_THROWS_AS(fordiff::brute_force_max_clique(g), std::invalid_argument);
  auto h = random_graph(12, 0.5, 6);
  auto bf = fordiff::brute_force_max_clique(h);
  CHECK(bf.size == exhaustive_max_clique(h));
  require_valid(h, bf);
}

TEST_CASE("graphs spanning several adjacency words") {
  // Planted clique of size 9 in a sparse 150-vertex graph.
  auto g = random_graph(150, 0.12, 99);
  std::vector<int> planted = {3, 31, 64, 65, 66, 101, 120, 140, 149};
  for (std::size_t i = 0; i < planted.size(); ++i)
    for (std::size_t j = i + 1; j < planted.size(); ++j) g.add_edge(planted[i], planted[j]);
  auto out = fordiff::max_clique(g);
  CHECK(out.size >= 9);
  require_valid(g, out);

  // Same instance, dynamic reordering disabled: same size.
  SearchOptions no_dyn;
  no_dyn.dynamic_root_order = false;
  CHECK(fordiff::max_clique(g, no_dyn).size == out.size);
}

TEST_CASE("sequential search is deterministic") {
  auto g = random_graph(60, 0.5, 42);
  auto a = fordiff::max_clique(g);
  auto b = fordiff::max_clique(g);
  CHECK(a.size == b.size);
  CHECK(a.witness == b.witness);
}

TEST_CASE("parallel search matches sequential") {
  for (int t = 0; t < 8; ++t) {
    auto g = random_graph(50 + 10 * t, 0.4 + 0.05 * t, 777 + t);
    auto seq = fordiff::max_clique(g);
    SearchOptions par;
    par.threads = 2 + t % 3;
    auto out = fordiff::max_clique(g, par);
    INFO("trial " << t);
    CHECK(out.size == seq.size);
    require_valid(g, out);
  }
}

TEST_CASE("seed cliques") {
  auto g = random_graph(40, 0.5, 314);
  auto base = fordiff::max_clique(g);

  // Seed with the known optimum: search must confirm, not regress.
  std::vector<int> seed_idx;
  for (std::int64_t label : base.witness)
    seed_idx.push_back(static_cast<int>(std::find(g.labels().begin(), g.labels().end(), label) -
                                        g.labels().begin()));
  SearchOptions opts;
  opts.seed_clique = seed_idx;
  auto out = fordiff::max_clique(g, opts);
  CHECK(out.size == base.size);

  // A non-clique seed is rejected.
  SearchOptions bad;
  for (int i = 0; i < g.n(); ++i)
    for (int j = i + 1; j < g.n(); ++j)
      if (!g.adjacent(i, j)) {
        bad.seed_clique = {i, j};
        goto found;
      }
found:
  CHECK_THROWS_AS(fordiff::max_clique(g, bad), std::invalid_argument);

  // Out-of-range seed index is rejected.
  SearchOptions oob;
  oob.seed_clique = {g.n()};
  CHECK_THROWS_AS(fordiff::max_clique(g, oob), std::invalid_argument);
}

TEST_CASE("stop_at returns once the target size is reached") {
  auto g = random_graph(45, 0.6, 2718);
  auto full = fordiff::max_clique(g);
  REQUIRE(full.size >= 3);

  SearchOptions opts;
  opts.stop_at = full.size;  // attainable: stops as soon as an optimum is found
  auto out = fordiff::max_clique(g, opts);
  CHECK(out.size == full.size);
  require_valid(g, out);

  SearchOptions early;
  early.stop_at = 2;
  auto quick = fordiff::max_clique(g, early);
  CHECK(quick.size >= 2);
  require_valid(g, quick);

  // Seeding at the stop threshold returns the seed immediately.
  SearchOptions seeded;
  seeded.stop_at = full.size;
  for (std::int64_t label : full.witness)
    seeded.seed_clique.push_back(static_cast<int>(
        std::find(g.labels().begin(), g.labels().end(), label) - g.labels().begin()));
  auto instant = fordiff::max_clique(g, seeded);
  CHECK(instant.size == full.size);
  CHECK(instant.nodes_expanded == 0);
}

TEST_CASE("budget exhaustion reports the best clique found") {
  auto g = random_graph(90, 0.7, 1618);
  SearchOptions opts;
  opts.budget.max_nodes = 5;
  try {
    fordiff::max_clique(g, opts);
    FAIL("expected BudgetExhausted");
  } catch (const fordiff::BudgetExhausted& e) {
    const auto& best = e.best();
    CHECK(best.size >= 1);  // greedy incumbent exists before any expansion
    require_valid(g, best);
    CHECK(std::string(e.what()).find("node") != std::string::npos);
  }

  // A generous budget does not trigger.
  SearchOptions loose;
  loose.budget.max_nodes = 50'000'000;
  loose.budget.max_seconds = 300.0;
  CHECK_NOTHROW(fordiff::max_clique(random_graph(30, 0.4, 5), loose));
}

TEST_CASE("bookkeeping fields") {
  auto g = random_graph(25, 0.5, 11);
  auto out = fordiff::max_clique(g);
  CHECK(out.nodes_expanded > 0);
  CHECK(out.seconds >= 0.0);
}

TEST_CASE("offset graphs end to end") {
  // Largest difference-avoiding subsets via graph + solver match direct
  // subset enumeration.
  for (const char* spec : {"squares", "primes", "squares+2"}) {
    auto x = fordiff::parse_set_spec(spec);
    for (int n : {6, 10, 15, 21, 33}) {
      auto g = fordiff::zero_neighborhood_graph(n, x);
      auto out = fordiff::max_clique(g);
      require_valid(g, out);
      // Direct check: {1} u (witness + 1) is difference-free in [1, n].
      std::vector<std::int64_t> a = {1};
      for (std::int64_t w : out.witness) a.push_back(1 + w);
      CHECK(fordiff::difference_free(x, a));
      CHECK(a.back() <= n);
    }
  }
  // Spot value: the largest prime-difference-avoiding subset of [1, 12] has
  // size 4, e.g. {1, 2, 10, 11} (offset clique {1, 9, 10}).
  auto g12 = fordiff::zero_neighborhood_graph(12, fordiff::ForbiddenSet::primes());
  CHECK(fordiff::max_clique(g12).size == 3);
}

TEST_CASE("clique size is invariant under vertex relabeling") {
  std::mt19937_64 rng(4242);
  for (const char* spec : {"squares", "primes-1", "squares+2"}) {
    auto x = fordiff::parse_set_spec(spec);
    for (int n : {24, 40, 60}) {
      auto g = fordiff::zero_neighborhood_graph(n, x);
      int truth = fordiff::max_clique(g).size;
      for (int shuffle = 0; shuffle < 3; ++shuffle) {
        // Rebuild the same graph under a random vertex permutation.
        std::vector<int> perm(static_cast<std::size_t>(g.n()));
        for (int i = 0; i < g.n(); ++i) perm[static_cast<std::size_t>(i)] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<std::int64_t> labels(perm.size());
        for (int i = 0; i < g.n(); ++i)
          labels[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] =
              g.labels()[static_cast<std::size_t>(i)];
        DiffGraph h(GraphKind::Generic, 0, labels);
        for (int i = 0; i < g.n(); ++i)
          for (int j = i + 1; j < g.n(); ++j)
            if (g.adjacent(i, j))
              h.add_edge(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
        auto out = fordiff::max_clique(h);
        INFO(spec << " n=" << n << " shuffle=" << shuffle);
        CHECK(out.size == truth);
        require_valid(h, out);
      }
    }
  }
}
