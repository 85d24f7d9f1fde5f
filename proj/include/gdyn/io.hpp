#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "gdyn/continuation.hpp"
#include "gdyn/coupling.hpp"
#include "gdyn/equilibria.hpp"
#include "gdyn/graph.hpp"
#include "gdyn/homology.hpp"
#include "gdyn/simulator.hpp"
#include "gdyn/stability.hpp"
#include "gdyn/symmetry.hpp"

namespace gdyn {

using json = nlohmann::json;

/// {"n": int, "edges": [[j,k],...]}; "n" is optional.
Graph graph_from_json(const json& j);
json to_json(const Graph& g);
/// One "j k" pair per line; '#' starts a comment; an optional "n <count>" line fixes n.
Graph parse_edge_list(std::istream& in);
/// JSON when the file parses as JSON, edge-list text otherwise.
Graph load_graph(const std::string& path);

/// {"family":"odd_poly","coeffs":[...]}, {"family":"sine_sum","terms":{"1":1.0}},
/// {"family":"sine_series","P":3.14159,"terms":{"1":1.0}}.
Coupling coupling_from_json(const json& j);
json to_json(const Coupling& f);
/// A file path, or an inline JSON object.
Coupling load_coupling(const std::string& source);

VertexMap vertex_map_from_json(const json& j);
Vec vec_from_json(const json& j);

json to_json(const Vec& v);
json to_json(const EquilibriumPoint& p);
json to_json(const EquilibriumAtlas& a);
json to_json(const DimensionBoundReport& r);
json to_json(const StabilityReport& r);
json to_json(const LocalDimension& d);
json to_json(const ManifoldSample& s);
json to_json(const Trajectory& t);
json to_json(const BasinReport& r);
json to_json(const BlockStability& b);
json to_json(const BlockDecomposition& b);
json to_json(const GeneralizedCoveringCheck& c);
json to_json(const Orbit& o);

/// point index, x..., local_dim, singular
void write_manifold_csv(std::ostream& out, const ManifoldSample& s);
/// point index, ascending eigenvalues..., zero multiplicity, verdict
void write_spectrum_csv(std::ostream& out, const std::vector<StabilityReport>& reports);
/// t, x..., energy
void write_trajectory_csv(std::ostream& out, const Trajectory& t);

/// Pretty JSON followed by a newline.
std::string dump(const json& j);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace gdyn
