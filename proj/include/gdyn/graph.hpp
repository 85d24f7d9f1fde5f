#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gdyn/types.hpp"

namespace gdyn {

/// Oriented edge tail -> head. The orientation fixes the sign of the edge-space coordinate
/// y_e = x_head - x_tail and never changes after construction.
struct Edge {
  int tail;
  int head;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Immutable simple graph with fixed edge order and orientation.
class Graph {
 public:
  Graph() = default;

  /// Throws SelfLoop, DuplicateEdge (either orientation) or InvalidVertex.
  /// Without an explicit vertex count, n = max label + 1.
  explicit Graph(std::vector<Edge> edges, std::optional<int> vertex_count = std::nullopt);

  int n() const noexcept { return n_; }
  int m() const noexcept { return static_cast<int>(edges_.size()); }
  int c() const noexcept { return components_; }

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }

  /// Sorted neighbour list.
  std::span<const int> neighbors(int v) const { return adjacency_[static_cast<std::size_t>(v)]; }
  int degree(int v) const { return static_cast<int>(adjacency_[static_cast<std::size_t>(v)].size()); }

  bool adjacent(int a, int b) const { return edge_index(a, b) >= 0; }
  /// Index of the edge joining a and b in either orientation, or -1.
  int edge_index(int a, int b) const;

  int component_of(int v) const { return component_of_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& component_map() const noexcept { return component_of_; }
  std::vector<int> component_vertices(int k) const;
  bool connected() const noexcept { return components_ <= 1; }

  /// Subgraph induced on `vertices` (relabelled 0..k-1 in the given order); edges keep
  /// their relative order and orientation.
  Graph induced(std::span<const int> vertices) const;

 private:
  int n_ = 0;
  int components_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<int> edge_lookup_;  // n*n, -1 where no edge
  std::vector<int> component_of_;
};

Graph build_graph(std::span<const std::pair<int, int>> edge_list,
                  std::optional<int> vertex_count = std::nullopt);

/// n x m matrix with b[i][(j,k)] = delta_ik - delta_ij.
IntMat incidence_matrix(const Graph& g);

/// 0/1 indicator vectors d_1..d_c of the connected components; a basis of ker(B^T).
std::vector<Vec> component_indicators(const Graph& g);

/// Orthonormal basis of H0 as the columns of an n x c matrix.
Mat translation_basis(const Graph& g);

/// Removes the per-component mean (projection onto the orthogonal complement of H0).
Vec project_out_translations(const Graph& g, const Vec& x);

/// y = B^T x, i.e. y_e = x_head - x_tail.
Vec edge_differences(const Graph& g, const Vec& x);

struct BlockDecomposition {
  /// Sorted vertex sets; bridges are two-vertex blocks, isolated vertices singletons.
  std::vector<std::vector<int>> blocks;
  /// Edge indices of each block, ascending.
  std::vector<std::vector<int>> block_edges;
  std::vector<int> cut_vertices;
};

BlockDecomposition block_decomposition(const Graph& g);

/// Rank from singular values with cutoff max(rows, cols) * eps * sigma_max unless overridden.
int numerical_rank(const Mat& a, std::optional<double> threshold = std::nullopt);

}  // namespace gdyn
