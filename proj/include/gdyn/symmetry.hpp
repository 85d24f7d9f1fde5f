#pragma once

#include <optional>
#include <vector>

#include "gdyn/coupling.hpp"
#include "gdyn/equilibria.hpp"
#include "gdyn/graph.hpp"
#include "gdyn/tolerances.hpp"

namespace gdyn {

inline constexpr int kMaxSearchVertices = 16;

using VertexMap = std::vector<int>;  // phi(v) for v in V(G)

/// phi restricted to every neighbourhood is a bijection onto the image neighbourhood.
bool is_covering(const VertexMap& phi, const Graph& g, const Graph& h);

struct GeneralizedCoveringCheck {
  bool valid = false;
  std::vector<int> fiber_degrees;  // d_i, filled when valid
  bool equitable = false;          // all d_i equal
  bool ordinary_covering = false;  // valid with all d_i = 1 and no same-colour neighbours
};

/// Drops neighbours of i with phi(j) = phi(i), then requires the rest to map d_i-to-one onto
/// N_H(phi(i)) with d_i >= 1.
GeneralizedCoveringCheck is_generalized_covering(const VertexMap& phi, const Graph& g, const Graph& h);

struct CoveringSearch {
  std::vector<VertexMap> maps;  // lexicographic order
  bool complete = true;
};

/// Backtracking over colourings; parallel over the image of vertex 0.
/// Throws GraphTooLarge for |V(G)| > 16 and SearchBudgetExceeded when more than cap maps exist.
CoveringSearch find_generalized_coverings(const Graph& g, const Graph& h, int cap = 100000);

/// x_i = y_{phi(i)}. Throws NotAnEquilibrium when y is not an equilibrium of (H, f).
EquilibriumPoint lift_equilibrium(const VertexMap& phi, const Graph& g, const Graph& h, const Coupling& f,
                                  const Vec& y, const Tolerances& tol = {});

struct AutomorphismSet {
  std::vector<std::vector<int>> perms;  // lexicographic, identity first
  bool complete = true;
};

/// Throws GraphTooLarge for n > 16.
AutomorphismSet automorphisms(const Graph& g, int cap = 1000000);

/// (sigma.x)_i = x_{sigma^-1(i)}.
Vec act(const std::vector<int>& sigma, const Vec& x);

struct OrbitMember {
  EquilibriumPoint point;
  std::vector<int> first_sigma;  // an automorphism producing this member
};

struct Orbit {
  std::vector<OrbitMember> members;
  std::vector<std::vector<int>> stabilizer;  // sigma with sigma.x equivalent to x
  /// x is fixed by a non-identity automorphism: a candidate singular point if x sits on a
  /// manifold of equilibria.
  bool fixed_by_nontrivial = false;
};

/// Throws NotAnEquilibrium.
Orbit orbit_of_equilibrium(const Graph& g, const Coupling& f, const AutomorphismSet& a, const EquilibriumPoint& x,
                           const Tolerances& tol = {}, double dedup_distance = 1e-6);

namespace serial {
CoveringSearch find_generalized_coverings(const Graph& g, const Graph& h, int cap = 100000);
}

}  // namespace gdyn
