#include "fordiff/clique.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstring>
#include <functional>
#include <mutex>
#include <numeric>
#include <thread>

namespace fordiff {
namespace {

using u64 = std::uint64_t;
using Clock = std::chrono::steady_clock;

int popcount_row(const u64* r, int words) {
  int c = 0;
  for (int w = 0; w < words; ++w) c += std::popcount(r[w]);
  return c;
}

bool empty_row(const u64* r, int words) {
  for (int w = 0; w < words; ++w)
    if (r[w]) return false;
  return true;
}

int and_popcount(const u64* a, const u64* b, int words) {
  int c = 0;
  for (int w = 0; w < words; ++w) c += std::popcount(a[w] & b[w]);
  return c;
}

struct Searcher {
  const DiffGraph& g;
  const SearchOptions& opts;
  int n, words;
  std::vector<u64> adj;       // renumbered adjacency rows
  std::vector<int> to_orig;   // renumbered index -> graph index
  std::vector<int> to_new;    // graph index -> renumbered index

  std::mutex best_mu;
  std::atomic<int> best_size{0};
  std::vector<int> best_clique;  // renumbered indices, guarded by best_mu
  std::atomic<bool> halt{false};
  std::atomic<bool> budget_hit{false};
  std::string budget_msg;
  std::atomic<u64> nodes{0};
  Clock::time_point t0;

  Searcher(const DiffGraph& graph, const SearchOptions& options)
      : g(graph), opts(options), n(graph.n()), words(graph.words()) {
    t0 = Clock::now();
    // Static order: degree descending, ties by smaller label.  Colour
    // bounds are tightest when dense vertices come first.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<int> deg(n);
    for (int i = 0; i < n; ++i) deg[i] = g.degree(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return deg[a] != deg[b] ? deg[a] > deg[b] : a < b; });
    to_orig = order;
    to_new.assign(n, 0);
    for (int i = 0; i < n; ++i) to_new[to_orig[i]] = i;
    adj.assign(static_cast<std::size_t>(n) * words, 0);
    for (int i = 0; i < n; ++i) {
      u64* r = adj.data() + static_cast<std::size_t>(i) * words;
      const u64* src = g.row(to_orig[i]);
      for (int w = 0; w < g.words(); ++w) {
        u64 bits = src[w];
        while (bits) {
          int j = to_new[(w << 6) + std::countr_zero(bits)];
          r[j >> 6] |= u64{1} << (j & 63);
          bits &= bits - 1;
        }
      }
    }
  }

  const u64* row(int v) const { return adj.data() + static_cast<std::size_t>(v) * words; }

  void offer(const std::vector<int>& clique) {
    int sz = static_cast<int>(clique.size());
    if (sz <= best_size.load(std::memory_order_relaxed)) return;
    std::lock_guard<std::mutex> lk(best_mu);
    if (sz <= best_size.load(std::memory_order_relaxed)) return;
    best_clique = clique;
    best_size.store(sz, std::memory_order_release);
    if (opts.stop_at > 0 && sz >= opts.stop_at) halt.store(true, std::memory_order_release);
  }

  // One branch taken; enforces node and time budgets.
  void count_node() {
    u64 nn = nodes.fetch_add(1, std::memory_order_relaxed) + 1;
    if (opts.budget.max_nodes && nn > opts.budget.max_nodes && !budget_hit.exchange(true)) {
      budget_msg = "node budget exhausted after " + std::to_string(nn) + " nodes";
      halt.store(true, std::memory_order_release);
    }
    if (opts.budget.max_seconds > 0.0 && (nn & 255) == 0) {
      double el = std::chrono::duration<double>(Clock::now() - t0).count();
      if (el > opts.budget.max_seconds && !budget_hit.exchange(true)) {
        budget_msg = "time budget exhausted after " + std::to_string(el) + " seconds";
        halt.store(true, std::memory_order_release);
      }
    }
  }

  struct Worker {
    Searcher& s;
    std::vector<std::vector<u64>> pbuf;   // candidate set per depth
    std::vector<std::vector<int>> vbuf;   // colour-sorted vertices per depth
    std::vector<std::vector<int>> cbuf;   // colour values per depth
    std::vector<int> q;                   // current clique path

    explicit Worker(Searcher& searcher) : s(searcher) {
      pbuf.assign(s.n + 2, std::vector<u64>(s.words, 0));
      vbuf.assign(s.n + 2, {});
      cbuf.assign(s.n + 2, {});
      q.reserve(s.n);
    }

    // Greedy sequential colouring of P; emits vertices grouped by colour
    // class, colours ascending.  When `dynamic` is set the classes are
    // built over vertices ranked by degree within P, which tightens the
    // bound near the root at extra cost.
    void color_sort(const u64* P, int depth, bool dynamic) {
      auto& order = vbuf[depth];
      auto& colors = cbuf[depth];
      order.clear();
      colors.clear();
      std::vector<u64> rest(P, P + s.words);
      if (!dynamic) {
        std::vector<u64> cand(s.words);
        int color = 0;
        while (!empty_row(rest.data(), s.words)) {
          ++color;
          cand = rest;
          for (int w = 0; w < s.words; ++w) {
            while (cand[w]) {
              int v = (w << 6) + std::countr_zero(cand[w]);
              order.push_back(v);
              colors.push_back(color);
              cand[w] &= cand[w] - 1;
              rest[w] &= ~(u64{1} << (v & 63));
              const u64* rv = s.row(v);
              for (int w2 = w; w2 < s.words; ++w2) cand[w2] &= ~rv[w2];
            }
          }
        }
        return;
      }
      std::vector<int> seq;
      for (int w = 0; w < s.words; ++w) {
        u64 bits = rest[w];
        while (bits) {
          seq.push_back((w << 6) + std::countr_zero(bits));
          bits &= bits - 1;
        }
      }
      std::vector<int> local(seq.size());
      for (std::size_t i = 0; i < seq.size(); ++i)
        local[i] = and_popcount(s.row(seq[i]), P, s.words);
      std::vector<std::size_t> rank(seq.size());
      std::iota(rank.begin(), rank.end(), std::size_t{0});
      std::stable_sort(rank.begin(), rank.end(), [&](std::size_t a, std::size_t b) {
        return local[a] != local[b] ? local[a] > local[b] : seq[a] < seq[b];
      });
      std::vector<u64> classmask(s.words);
      std::vector<std::uint8_t> used(seq.size(), 0);
      std::size_t left = seq.size();
      int color = 0;
      while (left) {
        ++color;
        std::fill(classmask.begin(), classmask.end(), 0);
        for (std::size_t ri = 0; ri < rank.size(); ++ri) {
          if (used[rank[ri]]) continue;
          int v = seq[rank[ri]];
          if (!empty_row(classmask.data(), s.words) &&
              and_popcount(s.row(v), classmask.data(), s.words) > 0)
            continue;
          order.push_back(v);
          colors.push_back(color);
          classmask[v >> 6] |= u64{1} << (v & 63);
          used[rank[ri]] = 1;
          --left;
        }
      }
    }

    void expand(int depth) {
      u64* P = pbuf[depth].data();
      bool dynamic = s.opts.dynamic_root_order && depth <= 3 &&
                     popcount_row(P, s.words) >= 20;
      color_sort(P, depth, dynamic);
      auto& order = vbuf[depth];
      auto& colors = cbuf[depth];
      for (int k = static_cast<int>(order.size()) - 1; k >= 0; --k) {
        if (s.halt.load(std::memory_order_acquire)) return;
        int v = order[k];
        if (static_cast<int>(q.size()) + colors[k] <=
            s.best_size.load(std::memory_order_relaxed))
          return;  // colours only shrink leftwards
        s.count_node();
        q.push_back(v);
        u64* child = pbuf[depth + 1].data();
        const u64* rv = s.row(v);
        bool any = false;
        for (int w = 0; w < s.words; ++w) {
          child[w] = P[w] & rv[w];
          any |= child[w] != 0;
        }
        if (!any)
          s.offer(q);
        else
          expand(depth + 1);
        q.pop_back();
        P[v >> 6] &= ~(u64{1} << (v & 63));
      }
    }
  };

  CliqueOutcome outcome() {
    CliqueOutcome out;
    {
      std::lock_guard<std::mutex> lk(best_mu);
      out.size = best_size.load();
      for (int v : best_clique) out.witness.push_back(g.labels()[to_orig[v]]);
    }
    std::sort(out.witness.begin(), out.witness.end());
    out.nodes_expanded = nodes.load();
    out.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return out;
  }

  CliqueOutcome run() {
    if (n == 0) return outcome();

    // Greedy incumbent in static order.
    std::vector<int> greedy;
    for (int v = 0; v < n; ++v) {
      bool ok = true;
      for (int u : greedy)
        if (!((row(u)[v >> 6] >> (v & 63)) & 1)) {
          ok = false;
          break;
        }
      if (ok) greedy.push_back(v);
    }
    offer(greedy);

    if (!opts.seed_clique.empty()) {
      std::vector<int> seed;
      for (int idx : opts.seed_clique) {
        if (idx < 0 || idx >= n) throw std::invalid_argument("seed vertex out of range");
        seed.push_back(to_new[idx]);
      }
      std::sort(seed.begin(), seed.end());
      if (std::adjacent_find(seed.begin(), seed.end()) != seed.end())
        throw std::invalid_argument("seed clique repeats a vertex");
      for (std::size_t i = 0; i < seed.size(); ++i)
        for (std::size_t j = i + 1; j < seed.size(); ++j)
          if (!((row(seed[i])[seed[j] >> 6] >> (seed[j] & 63)) & 1))
            throw std::invalid_argument("seed is not a clique");
      offer(seed);
    }

    if (halt.load()) return outcome();  // incumbent already meets stop_at

    // Root colouring over the full vertex set; branch k owns the cliques
    // whose highest-ordered vertex is order[k].
    std::vector<u64> rootP(words, 0);
    for (int v = 0; v < n; ++v) rootP[v >> 6] |= u64{1} << (v & 63);
    Worker rootw(*this);
    rootw.color_sort(rootP.data(), 0, false);
    std::vector<int> rorder = rootw.vbuf[0];
    std::vector<int> rcolors = rootw.cbuf[0];
    // prefix[k] = vertices ordered strictly before k at the root.
    std::vector<std::vector<u64>> prefix(rorder.size() + 1, std::vector<u64>(words, 0));
    for (std::size_t k = 0; k < rorder.size(); ++k) {
      prefix[k + 1] = prefix[k];
      prefix[k + 1][rorder[k] >> 6] |= u64{1} << (rorder[k] & 63);
    }

    std::atomic<int> next{static_cast<int>(rorder.size()) - 1};
    auto drive = [&]() {
      Worker w(*this);
      while (!halt.load(std::memory_order_acquire)) {
        int k = next.fetch_sub(1, std::memory_order_relaxed);
        if (k < 0) break;
        int v = rorder[static_cast<std::size_t>(k)];
        if (rcolors[static_cast<std::size_t>(k)] <= best_size.load(std::memory_order_relaxed))
          continue;
        count_node();
        w.q.assign(1, v);
        u64* child = w.pbuf[1].data();
        const u64* rv = row(v);
        bool any = false;
        for (int ww = 0; ww < words; ++ww) {
          child[ww] = prefix[static_cast<std::size_t>(k)][ww] & rv[ww];
          any |= child[ww] != 0;
        }
        if (!any)
          offer(w.q);
        else
          w.expand(1);
      }
    };

    int nthreads = std::max(1, std::min<int>(opts.threads, n));
    if (nthreads == 1) {
      drive();
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < nthreads; ++t) pool.emplace_back(drive);
      for (auto& th : pool) th.join();
    }

    if (budget_hit.load()) throw BudgetExhausted(budget_msg, outcome());
    return outcome();
  }
};

}  // namespace

CliqueOutcome max_clique(const DiffGraph& g, const SearchOptions& opts) {
  Searcher s(g, opts);
  return s.run();
}

CliqueOutcome brute_force_max_clique(const DiffGraph& g) {
  int n = g.n();
  if (n > 32) throw std::invalid_argument("reference solver limited to 32 vertices");
  auto t0 = Clock::now();
  std::vector<u64> adj(static_cast<std::size_t>(std::max(n, 1)), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && g.adjacent(i, j)) adj[static_cast<std::size_t>(i)] |= u64{1} << j;
  u64 best_mask = 0;
  int best = 0;
  u64 calls = 0;
  // Bron-Kerbosch without pivoting; every maximal clique is enumerated.
  std::function<void(u64, u64, u64)> bk = [&](u64 r, u64 p, u64 x) {
    ++calls;
    if (!p && !x) {
      int sz = std::popcount(r);
      if (sz > best) {
        best = sz;
        best_mask = r;
      }
      return;
    }
    while (p) {
      int v = std::countr_zero(p);
      u64 bit = u64{1} << v;
      bk(r | bit, p & adj[static_cast<std::size_t>(v)], x & adj[static_cast<std::size_t>(v)]);
      p &= ~bit;
      x |= bit;
    }
  };
  u64 all = n == 64 ? ~u64{0} : (u64{1} << n) - 1;
  bk(0, all, 0);
  CliqueOutcome out;
  out.size = best;
  for (int v = 0; v < n; ++v)
    if (best_mask >> v & 1) out.witness.push_back(g.labels()[static_cast<std::size_t>(v)]);
  std::sort(out.witness.begin(), out.witness.end());
  out.nodes_expanded = calls;
  out.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return out;
}

}  // namespace fordiff
