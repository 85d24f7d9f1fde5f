#include "doctest.h"

#include <numbers>
#include <set>

#include "gdyn/corpus.hpp"
#include "gdyn/equilibria.hpp"
#include "gdyn/errors.hpp"
#include "gdyn/field.hpp"
#include "gdyn/generators.hpp"
#include "gdyn/symmetry.hpp"
#include "oracles.hpp"

using namespace gdyn;
constexpr double kPi = std::numbers::pi;

TEST_CASE("coverings") {
  const auto tri = graphs::cycle(3);
  CHECK(is_covering({0, 1, 2}, tri, tri));
  const auto hex = graphs::hexagon();
  CHECK(is_covering({0, 1, 2, 0, 1, 2}, hex, tri));
  CHECK_FALSE(is_covering({0, 0, 1, 2, 1, 2}, hex, tri));
  const auto c = is_generalized_covering({0, 1, 2, 0, 1, 2}, hex, tri);
  CHECK(c.valid);
  CHECK(c.ordinary_covering);
  CHECK(c.fiber_degrees == std::vector<int>(6, 1));
  CHECK_FALSE(is_generalized_covering({0, 0, 1, 2}, graphs::complete(4), tri).valid);
}

TEST_CASE("covering from the asymmetric 7-vertex graph") {
  const auto g = graphs::asymmetric7();
  const auto h = graphs::complete(3);
  const auto phi = graphs::asymmetric7_cover();
  CHECK(is_generalized_covering(phi, g, h).valid);
  CHECK(oracle::generalized_covering(phi, g, h));
  CHECK(oracle::automorphism_count(g) == 1);
  CHECK(automorphisms(g).perms.size() == 1);
}

TEST_CASE("covering search agrees with exhaustive oracle") {
  const auto k3 = graphs::complete(3);
  const std::vector<std::pair<Graph, Graph>> cases{{graphs::cycle(3), k3},
                                                   {graphs::hexagon(), k3},
                                                   {graphs::path(3), k3},
                                                   {graphs::asymmetric7(), k3},
                                                   {graphs::complete(4), k3},
                                                   {graphs::book(3), graphs::path(2)},
                                                   {graphs::wheel(6), graphs::cycle(4)}};
  for (const auto& [g, h] : cases) {
    const auto got = find_generalized_coverings(g, h);
    CHECK(got.complete);
    CHECK(got.maps == oracle::all_generalized_coverings(g, h));
    CHECK(serial::find_generalized_coverings(g, h).maps == got.maps);
  }
  CHECK(find_generalized_coverings(graphs::cycle(3), k3).maps.size() == 6);
  CHECK(find_generalized_coverings(graphs::path(3), k3).maps.empty());
  CHECK_THROWS_AS(find_generalized_coverings(graphs::cycle(6), k3, 1), Error);
  CHECK_THROWS_AS(find_generalized_coverings(graphs::cycle(17), k3), Error);
}

TEST_CASE("lifting") {
  const auto g = graphs::asymmetric7();
  const auto h = graphs::complete(3);
  const auto phi = graphs::asymmetric7_cover();
  const auto f = Coupling::odd_polynomial({1.0, -1.0});
  CHECK(lift_equilibrium(phi, g, h, f, Vec::Zero(3)).x == Vec::Zero(7));
  for (double lambda : {-0.3, -0.1, 0.05, 0.25}) {
    const Vec y = constructions::k3_cubic_state(lambda);
    const double hres = vector_field(h, f, y).norm();
    const auto p = lift_equilibrium(phi, g, h, f, y);
    const auto cov = is_generalized_covering(phi, g, h);
    const int dmax = *std::max_element(cov.fiber_degrees.begin(), cov.fiber_degrees.end());
    CHECK(p.residual <= dmax * hres + 1e-12);
    CHECK(make_point(g, f, p.x).residual <= 1e-9);
  }
  Vec bad(3);
  bad << 0.0, 0.3, 0.1;
  CHECK_THROWS_AS(lift_equilibrium(phi, g, h, f, bad), Error);
}

TEST_CASE("automorphisms") {
  CHECK(automorphisms(graphs::complete(4)).perms.size() == 24);
  CHECK(automorphisms(graphs::cycle(5)).perms.size() == 10);
  for (const auto& g : {graphs::theta(), graphs::house(), graphs::wheel(6), graphs::book(3)}) {
    const auto a = automorphisms(g);
    CHECK(static_cast<int>(a.perms.size()) == oracle::automorphism_count(g));
    std::set<std::vector<int>> set(a.perms.begin(), a.perms.end());
    for (const auto& s : a.perms)
      for (const auto& t : a.perms) {
        std::vector<int> comp(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) comp[i] = s[static_cast<std::size_t>(t[i])];
        CHECK(set.count(comp) == 1);
      }
  }
}

TEST_CASE("automorphism equivariance of the field") {
  const auto g = graphs::theta();
  const auto f = Coupling::sine_sum({{1, 1.0}, {3, -0.4}});
  Vec x(5);
  x << 0.3, -1.2, 2.0, 0.7, -0.1;
  for (const auto& s : automorphisms(g).perms)
    CHECK((vector_field(g, f, act(s, x)) - act(s, vector_field(g, f, x))).norm() < 1e-13);
}

TEST_CASE("orbits") {
  const auto g = graphs::complete(4);
  const auto f = Coupling::sine_sum({{1, 1.0}});
  const auto a = automorphisms(g);
  const auto o0 = orbit_of_equilibrium(g, f, a, make_point(g, f, Vec::Zero(4)));
  CHECK(o0.members.size() == 1);
  CHECK(o0.fixed_by_nontrivial);
  Vec x(4);
  x << 0, kPi, 0, kPi;
  const auto o = orbit_of_equilibrium(g, f, a, make_point(g, f, x));
  const auto zp = zero_pattern_equilibria(g, f, kPi);
  CHECK(o.members.size() == 3);
  for (const auto& m : o.members) {
    bool found = false;
    for (const auto& z : zp) found = found || equivalence_distance(z.y, m.point.y, f.period()) <= 1e-6;
    CHECK(found);
  }
  CHECK(o.fixed_by_nontrivial);
}
