#include "gdyn/generators.hpp"

#include <algorithm>
#include <random>

#include "gdyn/errors.hpp"

namespace gdyn::graphs {

Graph complete(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.push_back({i, j});
  return Graph(std::move(e), n);
}

Graph cycle(int n) {
  if (n < 3) throw Error(ErrorCode::InvalidInput, "cycle needs n >= 3");
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return Graph(std::move(e), n);
}

Graph path(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return Graph(std::move(e), n);
}

Graph star(int leaves) {
  std::vector<Edge> e;
  for (int i = 1; i <= leaves; ++i) e.push_back({0, i});
  return Graph(std::move(e), leaves + 1);
}

Graph book(int pages) {
  std::vector<Edge> e{{0, 1}};
  for (int k = 0; k < pages; ++k) {
    e.push_back({0, k + 2});
    e.push_back({1, k + 2});
  }
  return Graph(std::move(e), pages + 2);
}

Graph wheel(int n) {
  if (n < 4) throw Error(ErrorCode::InvalidInput, "wheel needs n >= 4");
  const int rim = n - 1;
  std::vector<Edge> e;
  for (int i = 0; i < rim; ++i) e.push_back({i, (i + 1) % rim});
  for (int i = 0; i < rim; ++i) e.push_back({i, rim});
  return Graph(std::move(e), n);
}

Graph ladder(int squares) {
  // rails 0..k and k+1..2k+1
  const int k = squares;
  std::vector<Edge> e;
  for (int i = 0; i < k; ++i) {
    e.push_back({i, i + 1});
    e.push_back({k + 1 + i, k + 2 + i});
  }
  for (int i = 0; i <= k; ++i) e.push_back({i, k + 1 + i});
  return Graph(std::move(e), 2 * k + 2);
}

Graph theta() {
  return Graph({{0, 2}, {2, 1}, {0, 3}, {3, 1}, {0, 4}, {4, 1}}, 5);
}

Graph house() {
  return Graph({{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}, {4, 1}}, 5);
}

Graph asymmetric7() {
  return Graph({{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {1, 2},
                {1, 6}, {2, 4}, {2, 6}, {3, 5}, {4, 5}},
               7);
}

std::vector<int> asymmetric7_cover() { return {0, 0, 1, 1, 2, 2, 2}; }

Graph hexagon() { return cycle(6); }

Graph glue(const Graph& a, int va, const Graph& b, int vb) {
  std::vector<int> map(static_cast<std::size_t>(b.n()));
  int next = a.n();
  for (int v = 0; v < b.n(); ++v) map[static_cast<std::size_t>(v)] = (v == vb) ? va : next++;
  std::vector<Edge> e = a.edges();
  for (const auto& ed : b.edges())
    e.push_back({map[static_cast<std::size_t>(ed.tail)], map[static_cast<std::size_t>(ed.head)]});
  return Graph(std::move(e), next);
}

Graph random_connected(int n, int extra, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Edge> e;
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> pick(0, v - 1);
    const int u = pick(rng);
    if (rng() & 1u)
      e.push_back({u, v});
    else
      e.push_back({v, u});
  }
  std::vector<std::pair<int, int>> missing;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      bool present = std::any_of(e.begin(), e.end(), [&](const Edge& ed) {
        return (ed.tail == i && ed.head == j) || (ed.tail == j && ed.head == i);
      });
      if (!present) missing.emplace_back(i, j);
    }
  std::shuffle(missing.begin(), missing.end(), rng);
  for (int k = 0; k < extra && k < static_cast<int>(missing.size()); ++k)
    e.push_back({missing[static_cast<std::size_t>(k)].first, missing[static_cast<std::size_t>(k)].second});
  return Graph(std::move(e), n);
}

}  // namespace gdyn::graphs
