#include "gdyn/homology.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <queue>

#include "gdyn/errors.hpp"

namespace gdyn {

int EdgeSet::count() const {
  int c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

int EdgeSet::intersection_count(const EdgeSet& o) const {
  int c = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) c += std::popcount(words_[i] & o.words_[i]);
  return c;
}

bool EdgeSet::disjoint(const EdgeSet& o) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & o.words_[i]) return false;
  return true;
}

EdgeSet& EdgeSet::operator|=(const EdgeSet& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  return *this;
}

std::vector<int> EdgeSet::members() const {
  std::vector<int> out;
  for (int e = 0; e < m_; ++e)
    if (test(e)) out.push_back(e);
  return out;
}

namespace {

CycleVector from_walk(const Graph& g, const std::vector<int>& walk) {
  CycleVector c{std::vector<int>(static_cast<std::size_t>(g.m()), 0), EdgeSet(g.m()), walk};
  for (std::size_t i = 0; i < walk.size(); ++i) {
    const int a = walk[i], b = walk[(i + 1) % walk.size()];
    const int e = g.edge_index(a, b);
    c.coords[static_cast<std::size_t>(e)] = g.edge(e).tail == a ? 1 : -1;
    c.support.set(e);
  }
  return c;
}

}  // namespace

std::vector<int> boundary(const Graph& g, const std::vector<int>& coords) {
  std::vector<int> out(static_cast<std::size_t>(g.n()), 0);
  for (int e = 0; e < g.m(); ++e) {
    const int v = coords[static_cast<std::size_t>(e)];
    out[static_cast<std::size_t>(g.edge(e).head)] += v;
    out[static_cast<std::size_t>(g.edge(e).tail)] -= v;
  }
  return out;
}

std::vector<CycleVector> cycle_basis(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.n());
  std::vector<int> parent(n, -1), depth(n, -1);
  std::vector<bool> tree_edge(static_cast<std::size_t>(g.m()), false);
  for (int s = 0; s < g.n(); ++s) {
    if (depth[static_cast<std::size_t>(s)] >= 0) continue;
    depth[static_cast<std::size_t>(s)] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int w : g.neighbors(v)) {
        if (depth[static_cast<std::size_t>(w)] >= 0) continue;
        depth[static_cast<std::size_t>(w)] = depth[static_cast<std::size_t>(v)] + 1;
        parent[static_cast<std::size_t>(w)] = v;
        tree_edge[static_cast<std::size_t>(g.edge_index(v, w))] = true;
        q.push(w);
      }
    }
  }

  std::vector<CycleVector> out;
  for (int e = 0; e < g.m(); ++e) {
    if (tree_edge[static_cast<std::size_t>(e)]) continue;
    // walk tail -> head along the chord, then back through the tree
    int a = g.edge(e).tail, b = g.edge(e).head;
    std::vector<int> from_a{a}, from_b{b};
    while (a != b) {
      if (depth[static_cast<std::size_t>(a)] >= depth[static_cast<std::size_t>(b)]) {
        a = parent[static_cast<std::size_t>(a)];
        from_a.push_back(a);
      } else {
        b = parent[static_cast<std::size_t>(b)];
        from_b.push_back(b);
      }
    }
    // walk: tail, head, ..., lca, ..., back to tail
    std::vector<int> walk(from_b.begin(), from_b.end());
    for (auto it = from_a.rbegin() + 1; it != from_a.rend(); ++it) walk.push_back(*it);
    std::rotate(walk.begin(), walk.end() - 1, walk.end());
    auto c = from_walk(g, walk);
    c.vertices.clear();
    out.push_back(std::move(c));
  }
  return out;
}

CycleEnumeration enumerate_cycles_upto(const Graph& g, int cap) {
  CycleEnumeration res;
  const int n = g.n();
  std::vector<int> path;
  std::vector<bool> on_path(static_cast<std::size_t>(n), false);

  struct Frame {
    int v;
    std::size_t next;
  };

  for (int s = 0; s < n && res.complete; ++s) {
    path.assign(1, s);
    on_path.assign(static_cast<std::size_t>(n), false);
    on_path[static_cast<std::size_t>(s)] = true;
    std::vector<Frame> stack{{s, 0}};
    while (!stack.empty() && res.complete) {
      Frame& fr = stack.back();
      const auto nb = g.neighbors(fr.v);
      if (fr.next == nb.size()) {
        on_path[static_cast<std::size_t>(fr.v)] = false;
        path.pop_back();
        stack.pop_back();
        continue;
      }
      const int w = nb[fr.next++];
      if (w == s && path.size() >= 3 && path[1] < path.back()) {
        if (static_cast<int>(res.cycles.size()) >= cap) {
          res.complete = false;
          break;
        }
        res.cycles.push_back(from_walk(g, path));
        continue;
      }
      if (w <= s || on_path[static_cast<std::size_t>(w)]) continue;
      on_path[static_cast<std::size_t>(w)] = true;
      path.push_back(w);
      stack.push_back({w, 0});
    }
  }
  return res;
}

std::vector<CycleVector> enumerate_cycles(const Graph& g, int cap) {
  auto res = enumerate_cycles_upto(g, cap);
  if (!res.complete)
    throw Error(ErrorCode::CycleCapExceeded, "more than " + std::to_string(cap) + " simple cycles");
  return std::move(res.cycles);
}

bool is_cycle_chain(const std::vector<CycleVector>& cycles, const std::vector<int>& chain) {
  for (std::size_t j = 0; j < chain.size(); ++j) {
    for (std::size_t k = j + 1; k < chain.size(); ++k) {
      const int shared = cycles[static_cast<std::size_t>(chain[j])].support.intersection_count(
          cycles[static_cast<std::size_t>(chain[k])].support);
      if (k == j + 1 ? shared != 1 : shared != 0) return false;
    }
  }
  return true;
}

namespace {

using Clock = std::chrono::steady_clock;

struct ChainSearch {
  const std::vector<CycleVector>& cycles;
  int m;
  Clock::time_point deadline;
  std::atomic<bool>& timed_out;
  std::atomic<int>& global_best;

  std::vector<int> best_chain;
  std::vector<int> chain;
  long nodes = 0;

  // `used` holds every edge of the chain except the last cycle's.
  void dfs(const EdgeSet& used, int last) {
    if ((++nodes & 1023) == 0 && Clock::now() > deadline) timed_out = true;
    if (timed_out) return;
    if (chain.size() > best_chain.size()) {
      best_chain = chain;
      int g = global_best.load();
      while (static_cast<int>(chain.size()) > g && !global_best.compare_exchange_weak(g, static_cast<int>(chain.size()))) {
      }
    }
    const auto& lc = cycles[static_cast<std::size_t>(last)].support;
    EdgeSet next_used = used;
    next_used |= lc;
    // every further cycle contributes at least two fresh edges
    const int free_edges = m - next_used.count();
    if (static_cast<int>(chain.size()) + free_edges / 2 <= global_best.load()) return;
    for (std::size_t c = 0; c < cycles.size(); ++c) {
      const auto& cs = cycles[c].support;
      if (cs.intersection_count(lc) != 1 || !cs.disjoint(used)) continue;
      chain.push_back(static_cast<int>(c));
      dfs(next_used, static_cast<int>(c));
      chain.pop_back();
      if (timed_out) return;
    }
  }

  // First chain of length `target` in lexicographic index order.
  bool first_of_length(const EdgeSet& used, int last, std::size_t target) {
    if (chain.size() == target) return true;
    const auto& lc = cycles[static_cast<std::size_t>(last)].support;
    EdgeSet next_used = used;
    next_used |= lc;
    if (chain.size() + static_cast<std::size_t>((m - next_used.count()) / 2) < target) return false;
    for (std::size_t c = 0; c < cycles.size(); ++c) {
      const auto& cs = cycles[c].support;
      if (cs.intersection_count(lc) != 1 || !cs.disjoint(used)) continue;
      chain.push_back(static_cast<int>(c));
      if (first_of_length(next_used, static_cast<int>(c), target)) return true;
      chain.pop_back();
    }
    return false;
  }
};

ChainResult chain_search(const Graph& g, const ChainOptions& opt, bool parallel) {
  auto en = enumerate_cycles_upto(g, opt.cap);
  ChainResult res;
  res.exact = en.complete;
  const auto& cycles = en.cycles;
  if (cycles.empty()) return res;

  std::atomic<bool> timed_out{false};
  std::atomic<int> global_best{1};
  const auto deadline = Clock::now() + opt.budget;
  const int count = static_cast<int>(cycles.size());
  std::vector<std::vector<int>> per_start(cycles.size());

#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (int s = 0; s < count; ++s) {
    ChainSearch search{cycles, g.m(), deadline, timed_out, global_best, {}, {s}, 0};
    search.dfs(EdgeSet(g.m()), s);
    per_start[static_cast<std::size_t>(s)] = std::move(search.best_chain);
  }

  std::size_t best = 0;
  for (const auto& ch : per_start) best = std::max(best, ch.size());
  res.cc = static_cast<int>(best);
  // Report the lexicographically first longest chain so the witness is schedule independent.
  for (int s = 0; s < count && res.chain.empty(); ++s) {
    ChainSearch search{cycles, g.m(), deadline, timed_out, global_best, {}, {s}, 0};
    if (search.first_of_length(EdgeSet(g.m()), s, best)) res.chain = std::move(search.chain);
  }
  if (timed_out) res.exact = false;
  return res;
}

}  // namespace

ChainResult cycle_chain_number(const Graph& g, const ChainOptions& opt) { return chain_search(g, opt, true); }

namespace serial {
ChainResult cycle_chain_number(const Graph& g, const ChainOptions& opt) { return chain_search(g, opt, false); }
}  // namespace serial

int DimensionBoundReport::min_applicable_bound() const {
  int b = std::min({bounds.n_minus_c, bounds.half_m, bounds.m_minus_n_plus_c});
  if (applicable_chain_bound && bounds.chain_bound) b = std::min(b, *bounds.chain_bound);
  return b;
}

DimensionBoundReport dimension_bounds(const Graph& g, const Coupling& f, const ChainOptions& opt) {
  DimensionBoundReport r;
  r.dim_h1 = g.m() - g.n() + g.c();
  const auto chain = cycle_chain_number(g, opt);
  r.cc = chain.cc;
  r.cc_exact = chain.exact;
  r.bounds.n_minus_c = g.n() - g.c();
  r.bounds.half_m = g.m() / 2;
  r.bounds.m_minus_n_plus_c = r.dim_h1;
  if (r.cc >= 1) r.bounds.chain_bound = r.dim_h1 - r.cc + 1;
  r.applicable_chain_bound = r.bounds.chain_bound.has_value() && (f.period().has_value() || f.finite_fibers());
  return r;
}

}  // namespace gdyn
