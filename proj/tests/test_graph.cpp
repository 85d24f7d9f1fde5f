#include "doctest.h"

#include <random>

#include "gdyn/errors.hpp"
#include "gdyn/generators.hpp"
#include "gdyn/graph.hpp"
#include "oracles.hpp"

using namespace gdyn;

TEST_CASE("build_graph basics") {
  const std::vector<std::pair<int, int>> tri{{0, 1}, {1, 2}, {2, 0}};
  const auto g = build_graph(tri);
  CHECK(g.n() == 3);
  CHECK(g.m() == 3);
  CHECK(g.c() == 1);
  CHECK(g.edge(2) == Edge{2, 0});

  const std::vector<std::pair<int, int>> two{{0, 1}, {2, 3}};
  CHECK(build_graph(two).c() == 2);
  CHECK(build_graph(two, 6).c() == 4);
}

TEST_CASE("build_graph rejects loops and duplicates") {
  const std::vector<std::pair<int, int>> loop{{0, 0}};
  const std::vector<std::pair<int, int>> dup{{0, 1}, {1, 0}};
  const std::vector<std::pair<int, int>> neg{{-1, 0}};
  auto code = [](const auto& edges) {
    try {
      build_graph(edges);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::NoConvergence;
  };
  CHECK(code(loop) == ErrorCode::SelfLoop);
  CHECK(code(dup) == ErrorCode::DuplicateEdge);
  CHECK(code(neg) == ErrorCode::InvalidVertex);
}

TEST_CASE("incidence matrix entries and rank") {
  const auto e = graphs::path(2);
  const auto b = incidence_matrix(e);
  CHECK(b(0, 0) == -1);
  CHECK(b(1, 0) == 1);

  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const int n = 3 + static_cast<int>(rng() % 7);
    const auto g = graphs::random_connected(n, static_cast<int>(rng() % 6), rng());
    const auto bm = incidence_matrix(g);
    for (int col = 0; col < g.m(); ++col) CHECK(bm.col(col).sum() == 0);
    CHECK(oracle::rank(oracle::incidence(g)) == g.n() - g.c());
    CHECK(numerical_rank(bm.cast<double>()) == g.n() - g.c());
  }
  CHECK(oracle::rank(oracle::incidence(graphs::complete(4))) == 3);
  CHECK(numerical_rank(incidence_matrix(graphs::complete(4)).cast<double>()) == 3);
  CHECK(numerical_rank(incidence_matrix(graphs::cycle(3)).cast<double>()) == 2);
}

TEST_CASE("component indicators span ker B^T") {
  const std::vector<std::pair<int, int>> two{{0, 1}, {2, 3}};
  const auto g = build_graph(two);
  const auto d = component_indicators(g);
  REQUIRE(d.size() == 2);
  CHECK(d[0] == (Vec(4) << 1, 1, 0, 0).finished());
  CHECK(d[1] == (Vec(4) << 0, 0, 1, 1).finished());

  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    std::vector<std::pair<int, int>> edges;
    const int n = 4 + static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng() % 4 == 0) edges.push_back({i, j});
    const auto h = build_graph(edges, n);
    const Mat bt = incidence_matrix(h).cast<double>().transpose();
    const auto ind = component_indicators(h);
    CHECK(static_cast<int>(ind.size()) == oracle::components(h));
    for (const auto& v : ind) CHECK((bt * v).norm() == 0.0);
  }
}

TEST_CASE("block decomposition") {
  const auto bow = graphs::glue(graphs::cycle(3), 0, graphs::cycle(3), 0);
  auto b = block_decomposition(bow);
  CHECK(b.blocks.size() == 2);
  CHECK(b.cut_vertices == std::vector<int>{0});

  b = block_decomposition(graphs::path(3));
  REQUIRE(b.blocks.size() == 2);
  CHECK(b.cut_vertices == std::vector<int>{1});
  CHECK(block_decomposition(graphs::complete(4)).blocks.size() == 1);

  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    const auto g = graphs::glue(graphs::random_connected(5, 3, rng()), 2, graphs::random_connected(4, 2, rng()), 0);
    const auto d = block_decomposition(g);
    std::vector<int> seen(static_cast<std::size_t>(g.m()), 0);
    for (const auto& be : d.block_edges)
      for (int e : be) ++seen[static_cast<std::size_t>(e)];
    for (int s : seen) CHECK(s == 1);
    for (std::size_t i = 0; i < d.blocks.size(); ++i)
      for (std::size_t j = i + 1; j < d.blocks.size(); ++j) {
        std::vector<int> common;
        std::set_intersection(d.blocks[i].begin(), d.blocks[i].end(), d.blocks[j].begin(), d.blocks[j].end(),
                              std::back_inserter(common));
        CHECK(common.size() <= 1);
        for (int v : common)
          CHECK(std::find(d.cut_vertices.begin(), d.cut_vertices.end(), v) != d.cut_vertices.end());
      }
  }
}

TEST_CASE("translations") {
  const auto g = graphs::complete(4);
  Vec x(4);
  x << 1, 2, 3, 6;
  const Vec p = project_out_translations(g, x);
  CHECK(std::abs(p.sum()) < 1e-14);
  CHECK((edge_differences(g, x) - edge_differences(g, p)).norm() < 1e-14);
}
