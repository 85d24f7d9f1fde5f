#include "gdyn/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

#include "gdyn/errors.hpp"
#include "gdyn/tolerances.hpp"

namespace gdyn {

Graph::Graph(std::vector<Edge> edges, std::optional<int> vertex_count) : edges_(std::move(edges)) {
  int max_label = -1;
  for (const auto& e : edges_) {
    if (e.tail < 0 || e.head < 0)
      throw Error(ErrorCode::InvalidVertex, "vertex labels must be nonnegative");
    if (e.tail == e.head)
      throw Error(ErrorCode::SelfLoop, "self-loop at vertex " + std::to_string(e.tail));
    max_label = std::max({max_label, e.tail, e.head});
  }
  n_ = vertex_count ? *vertex_count : max_label + 1;
  if (n_ < 0 || max_label >= n_)
    throw Error(ErrorCode::InvalidVertex,
                "edge endpoint " + std::to_string(max_label) + " outside vertex count " +
                    std::to_string(n_));

  const auto nn = static_cast<std::size_t>(n_);
  edge_lookup_.assign(nn * nn, -1);
  adjacency_.assign(nn, {});
  for (int k = 0; k < m(); ++k) {
    const auto [a, b] = edges_[static_cast<std::size_t>(k)];
    auto& slot = edge_lookup_[static_cast<std::size_t>(a) * nn + static_cast<std::size_t>(b)];
    if (slot >= 0)
      throw Error(ErrorCode::DuplicateEdge,
                  "edge {" + std::to_string(a) + "," + std::to_string(b) + "} repeats");
    slot = k;
    edge_lookup_[static_cast<std::size_t>(b) * nn + static_cast<std::size_t>(a)] = k;
    adjacency_[static_cast<std::size_t>(a)].push_back(b);
    adjacency_[static_cast<std::size_t>(b)].push_back(a);
  }
  for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());

  component_of_.assign(nn, -1);
  components_ = 0;
  for (int s = 0; s < n_; ++s) {
    if (component_of_[static_cast<std::size_t>(s)] >= 0) continue;
    std::queue<int> q;
    q.push(s);
    component_of_[static_cast<std::size_t>(s)] = components_;
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int w : adjacency_[static_cast<std::size_t>(v)]) {
        if (component_of_[static_cast<std::size_t>(w)] < 0) {
          component_of_[static_cast<std::size_t>(w)] = components_;
          q.push(w);
        }
      }
    }
    ++components_;
  }
}

int Graph::edge_index(int a, int b) const {
  if (a < 0 || b < 0 || a >= n_ || b >= n_) return -1;
  return edge_lookup_[static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) +
                      static_cast<std::size_t>(b)];
}

std::vector<int> Graph::component_vertices(int k) const {
  std::vector<int> out;
  for (int v = 0; v < n_; ++v)
    if (component_of_[static_cast<std::size_t>(v)] == k) out.push_back(v);
  return out;
}

Graph Graph::induced(std::span<const int> vertices) const {
  std::vector<int> local(static_cast<std::size_t>(n_), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const int v = vertices[i];
    if (v < 0 || v >= n_) throw Error(ErrorCode::InvalidVertex, "induced: vertex out of range");
    local[static_cast<std::size_t>(v)] = static_cast<int>(i);
  }
  std::vector<Edge> sub;
  for (const auto& e : edges_) {
    const int a = local[static_cast<std::size_t>(e.tail)];
    const int b = local[static_cast<std::size_t>(e.head)];
    if (a >= 0 && b >= 0) sub.push_back({a, b});
  }
  return Graph(std::move(sub), static_cast<int>(vertices.size()));
}

Graph build_graph(std::span<const std::pair<int, int>> edge_list, std::optional<int> vertex_count) {
  std::vector<Edge> edges;
  edges.reserve(edge_list.size());
  for (const auto& [a, b] : edge_list) edges.push_back({a, b});
  return Graph(std::move(edges), vertex_count);
}

IntMat incidence_matrix(const Graph& g) {
  IntMat b = IntMat::Zero(g.n(), g.m());
  for (int k = 0; k < g.m(); ++k) {
    b(g.edge(k).tail, k) = -1;
    b(g.edge(k).head, k) = 1;
  }
  return b;
}

std::vector<Vec> component_indicators(const Graph& g) {
  std::vector<Vec> out(static_cast<std::size_t>(g.c()), Vec::Zero(g.n()));
  for (int v = 0; v < g.n(); ++v) out[static_cast<std::size_t>(g.component_of(v))](v) = 1.0;
  return out;
}

Mat translation_basis(const Graph& g) {
  Mat d = Mat::Zero(g.n(), g.c());
  std::vector<int> sizes(static_cast<std::size_t>(g.c()), 0);
  for (int v = 0; v < g.n(); ++v) ++sizes[static_cast<std::size_t>(g.component_of(v))];
  for (int v = 0; v < g.n(); ++v) {
    const int k = g.component_of(v);
    d(v, k) = 1.0 / std::sqrt(static_cast<double>(sizes[static_cast<std::size_t>(k)]));
  }
  return d;
}

Vec project_out_translations(const Graph& g, const Vec& x) {
  std::vector<double> sum(static_cast<std::size_t>(g.c()), 0.0);
  std::vector<int> count(static_cast<std::size_t>(g.c()), 0);
  for (int v = 0; v < g.n(); ++v) {
    sum[static_cast<std::size_t>(g.component_of(v))] += x(v);
    ++count[static_cast<std::size_t>(g.component_of(v))];
  }
  Vec out = x;
  for (int v = 0; v < g.n(); ++v) {
    const auto k = static_cast<std::size_t>(g.component_of(v));
    out(v) -= sum[k] / count[k];
  }
  return out;
}

Vec edge_differences(const Graph& g, const Vec& x) {
  Vec y(g.m());
  for (int k = 0; k < g.m(); ++k) y(k) = x(g.edge(k).head) - x(g.edge(k).tail);
  return y;
}

BlockDecomposition block_decomposition(const Graph& g) {
  // Iterative Hopcroft-Tarjan over an edge stack.
  const int n = g.n();
  std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
  std::vector<int> parent_edge(static_cast<std::size_t>(n), -1);
  std::vector<bool> is_cut(static_cast<std::size_t>(n), false);
  std::vector<int> edge_stack;
  std::vector<std::vector<int>> block_edges;
  int timer = 0;

  struct Frame {
    int v;
    std::size_t next;
    int children;
  };

  for (int root = 0; root < n; ++root) {
    if (disc[static_cast<std::size_t>(root)] >= 0) continue;
    if (g.degree(root) == 0) {
      disc[static_cast<std::size_t>(root)] = timer++;
      block_edges.push_back({});  // singleton block, patched below
      block_edges.back().push_back(-1 - root);
      continue;
    }
    std::vector<Frame> stack{{root, 0, 0}};
    disc[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = timer++;
    while (!stack.empty()) {
      Frame& fr = stack.back();
      const int v = fr.v;
      const auto nbrs = g.neighbors(v);
      if (fr.next < nbrs.size()) {
        const int w = nbrs[fr.next++];
        const int e = g.edge_index(v, w);
        if (e == parent_edge[static_cast<std::size_t>(v)]) continue;
        if (disc[static_cast<std::size_t>(w)] < 0) {
          edge_stack.push_back(e);
          parent_edge[static_cast<std::size_t>(w)] = e;
          disc[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = timer++;
          ++fr.children;
          stack.push_back({w, 0, 0});
        } else if (disc[static_cast<std::size_t>(w)] < disc[static_cast<std::size_t>(v)]) {
          edge_stack.push_back(e);
          low[static_cast<std::size_t>(v)] =
              std::min(low[static_cast<std::size_t>(v)], disc[static_cast<std::size_t>(w)]);
        }
        continue;
      }
      const int children = fr.children;
      stack.pop_back();
      if (stack.empty()) {
        if (children > 1) is_cut[static_cast<std::size_t>(v)] = true;
        continue;
      }
      const int u = stack.back().v;
      low[static_cast<std::size_t>(u)] =
          std::min(low[static_cast<std::size_t>(u)], low[static_cast<std::size_t>(v)]);
      if (low[static_cast<std::size_t>(v)] >= disc[static_cast<std::size_t>(u)]) {
        if (stack.size() > 1) is_cut[static_cast<std::size_t>(u)] = true;
        const int tree_edge = parent_edge[static_cast<std::size_t>(v)];
        std::vector<int> comp;
        while (true) {
          const int e = edge_stack.back();
          edge_stack.pop_back();
          comp.push_back(e);
          if (e == tree_edge) break;
        }
        block_edges.push_back(std::move(comp));
      }
    }
  }

  BlockDecomposition out;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> blocks;
  for (auto& edges : block_edges) {
    std::vector<int> verts;
    if (edges.size() == 1 && edges[0] < 0) {
      verts.push_back(-1 - edges[0]);
      edges.clear();
    } else {
      for (int e : edges) {
        verts.push_back(g.edge(e).tail);
        verts.push_back(g.edge(e).head);
      }
      std::sort(verts.begin(), verts.end());
      verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
      std::sort(edges.begin(), edges.end());
    }
    blocks.emplace_back(std::move(verts), std::move(edges));
  }
  std::sort(blocks.begin(), blocks.end());
  for (auto& [verts, edges] : blocks) {
    out.blocks.push_back(std::move(verts));
    out.block_edges.push_back(std::move(edges));
  }
  for (int v = 0; v < n; ++v)
    if (is_cut[static_cast<std::size_t>(v)]) out.cut_vertices.push_back(v);
  return out;
}

int numerical_rank(const Mat& a, std::optional<double> threshold) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(a);
  const Vec& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  const double cut = threshold ? *threshold : Tolerances{}.rank_threshold(a.rows(), a.cols(), smax);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) ++r;
  return r;
}

}  // namespace gdyn
