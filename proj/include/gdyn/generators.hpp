#pragma once

#include <cstdint>
#include <vector>

#include "gdyn/graph.hpp"

namespace gdyn::graphs {

Graph complete(int n);
/// C_n with edges (0,1),(1,2),...,(n-1,0).
Graph cycle(int n);
Graph path(int n);
/// Star with centre 0 and `leaves` leaves.
Graph star(int leaves);
/// Triangular book B_p: spine (0,1), page vertices 2..p+1 joined to both spine vertices.
Graph book(int pages);
/// Wheel with n vertices: rim C_{n-1} on 0..n-2, hub n-1.
Graph wheel(int n);
/// Snake (ladder) of `squares` unit squares glued along rungs.
Graph ladder(int squares);
/// K_{2,3}: degree-3 vertices 0 and 1, middle vertices 2, 3, 4.
Graph theta();
/// Square 0-1-2-3 with roof vertex 4 on edge (0,1): two cycles sharing one edge.
Graph house();
/// Seven-vertex asymmetric graph admitting a generalized covering onto K3.
Graph asymmetric7();
/// Covering map of asymmetric7() onto K3.
std::vector<int> asymmetric7_cover();
/// Hexagon covering the triangle through v mod 3.
Graph hexagon();
/// Disjoint union of a and b with vertex `va` of a identified with vertex `vb` of b.
/// Vertices of b other than vb are appended after a's, in order.
Graph glue(const Graph& a, int va, const Graph& b, int vb);
/// Random connected graph: random spanning tree plus `extra` random chords.
Graph random_connected(int n, int extra, std::uint64_t seed);

}  // namespace gdyn::graphs
