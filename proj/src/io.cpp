#include "gdyn/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "gdyn/errors.hpp"

namespace gdyn {

namespace {

std::string num(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::map<int, double> terms_from_json(const json& t) {
  if (!t.is_object()) throw Error(ErrorCode::InvalidCoupling, "\"terms\" must be an object of multiplier -> amplitude");
  std::map<int, double> out;
  for (const auto& [k, v] : t.items()) {
    int key = 0;
    const auto r = std::from_chars(k.data(), k.data() + k.size(), key);
    if (r.ec != std::errc() || r.ptr != k.data() + k.size())
      throw Error(ErrorCode::InvalidCoupling, "term key \"" + k + "\" is not an integer");
    if (!v.is_number()) throw Error(ErrorCode::InvalidCoupling, "term amplitudes must be numbers");
    out[key] += v.get<double>();
  }
  return out;
}

}  // namespace

Graph graph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("edges") || !j["edges"].is_array())
    throw Error(ErrorCode::InvalidInput, "graph JSON needs an \"edges\" array");
  std::vector<Edge> edges;
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw Error(ErrorCode::InvalidInput, "each edge must be a pair of integers");
    edges.push_back({e[0].get<int>(), e[1].get<int>()});
  }
  std::optional<int> n;
  if (j.contains("n")) {
    if (!j["n"].is_number_integer()) throw Error(ErrorCode::InvalidInput, "\"n\" must be an integer");
    n = j["n"].get<int>();
  }
  return Graph(std::move(edges), n);
}

json to_json(const Graph& g) {
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back({e.tail, e.head});
  return {{"n", g.n()}, {"edges", edges}};
}

Graph parse_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::optional<int> n;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "n") {
      int v;
      if (!(ls >> v)) throw Error(ErrorCode::InvalidInput, "line " + std::to_string(lineno) + ": bad vertex count");
      n = v;
      continue;
    }
    int a, b;
    std::istringstream fs(first);
    if (!(fs >> a) || !(ls >> b))
      throw Error(ErrorCode::InvalidInput, "line " + std::to_string(lineno) + ": expected \"j k\"");
    std::string rest;
    if (ls >> rest) throw Error(ErrorCode::InvalidInput, "line " + std::to_string(lineno) + ": trailing tokens");
    edges.push_back({a, b});
  }
  return Graph(std::move(edges), n);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, path + ": " + e.what());
  }
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open graph file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      return graph_from_json(json::parse(text));
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::InvalidInput, path + ": " + e.what());
    }
  }
  std::istringstream is(text);
  return parse_edge_list(is);
}

Coupling coupling_from_json(const json& j) {
  if (!j.is_object() || !j.contains("family") || !j["family"].is_string())
    throw Error(ErrorCode::InvalidCoupling, "coupling JSON needs a \"family\" string");
  const auto family = j["family"].get<std::string>();
  if (family == "odd_poly") {
    if (!j.contains("coeffs") || !j["coeffs"].is_array())
      throw Error(ErrorCode::InvalidCoupling, "odd_poly needs a \"coeffs\" array");
    std::vector<double> c;
    for (const auto& v : j["coeffs"]) {
      if (!v.is_number()) throw Error(ErrorCode::InvalidCoupling, "coefficients must be numbers");
      c.push_back(v.get<double>());
    }
    return Coupling::odd_polynomial(std::move(c));
  }
  if (family == "sine_sum") {
    if (!j.contains("terms")) throw Error(ErrorCode::InvalidCoupling, "sine_sum needs \"terms\"");
    return Coupling::sine_sum(terms_from_json(j["terms"]));
  }
  if (family == "sine_series") {
    if (!j.contains("P") || !j["P"].is_number() || !j.contains("terms"))
      throw Error(ErrorCode::InvalidCoupling, "sine_series needs numeric \"P\" and \"terms\"");
    return Coupling::sine_series(j["P"].get<double>(), terms_from_json(j["terms"]));
  }
  throw Error(ErrorCode::InvalidCoupling, "unknown family \"" + family + "\" (odd_poly, sine_sum, sine_series)");
}

json to_json(const Coupling& f) {
  json j;
  j["family"] = to_string(f.family());
  if (f.family() == CouplingFamily::OddPolynomial) {
    j["coeffs"] = f.odd_coefficients();
  } else {
    json t = json::object();
    for (const auto& [k, a] : f.terms()) t[std::to_string(k)] = a;
    j["terms"] = t;
    if (f.family() == CouplingFamily::SineSeries) j["P"] = f.half_period();
  }
  return j;
}

Coupling load_coupling(const std::string& source) {
  const auto first = source.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && source[first] == '{') {
    try {
      return coupling_from_json(json::parse(source));
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::InvalidCoupling, std::string("inline coupling: ") + e.what());
    }
  }
  return coupling_from_json(read_json_file(source));
}

VertexMap vertex_map_from_json(const json& j) {
  const json& arr = j.is_object() && j.contains("phi") ? j["phi"] : j;
  if (!arr.is_array()) throw Error(ErrorCode::InvalidInput, "vertex map JSON needs a \"phi\" array");
  VertexMap phi;
  for (const auto& v : arr) {
    if (!v.is_number_integer()) throw Error(ErrorCode::InvalidInput, "phi entries must be integers");
    phi.push_back(v.get<int>());
  }
  return phi;
}

Vec vec_from_json(const json& j) {
  const json& arr = j.is_object() && j.contains("x") ? j["x"] : j;
  if (!arr.is_array()) throw Error(ErrorCode::InvalidInput, "state JSON must be an array or {\"x\": [...]}");
  Vec v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) throw Error(ErrorCode::InvalidInput, "state entries must be numbers");
    v(static_cast<Eigen::Index>(i)) = arr[i].get<double>();
  }
  return v;
}

json to_json(const Vec& v) { return json(std::vector<double>(v.begin(), v.end())); }

json to_json(const EquilibriumPoint& p) {
  return {{"x", to_json(p.x)}, {"y", to_json(p.y)}, {"residual", p.residual}, {"canonical", to_json(p.canonical)}};
}

json to_json(const EquilibriumAtlas& a) {
  json pts = json::array();
  for (const auto& p : a.points) pts.push_back(to_json(p));
  json meta = {{"dedup_distance", a.dedup_distance}, {"failures", a.failures}};
  meta["period_identification"] = a.period ? json(*a.period) : json(nullptr);
  return {{"points", pts}, {"dedup_metadata", meta}};
}

json to_json(const DimensionBoundReport& r) {
  json b = {{"n_minus_c", r.bounds.n_minus_c}, {"half_m", r.bounds.half_m}, {"m_minus_n_plus_c", r.bounds.m_minus_n_plus_c}};
  b["chain_bound"] = r.bounds.chain_bound ? json(*r.bounds.chain_bound) : json(nullptr);
  return {{"dim_H1", r.dim_h1},
          {"cc", r.cc},
          {"cc_exact", r.cc_exact},
          {"bounds", b},
          {"applicable_chain_bound", r.applicable_chain_bound},
          {"min_applicable_bound", r.min_applicable_bound()}};
}

json to_json(const StabilityReport& r) {
  return {{"spectrum", to_json(r.spectrum)},
          {"rank", r.rank},
          {"zero_multiplicity", r.zero_multiplicity},
          {"zero_threshold", r.zero_threshold},
          {"verdict", r.verdict_label()},
          {"rule", r.rule},
          {"positive_edge_shortcut", r.positive_edge_shortcut}};
}

json to_json(const LocalDimension& d) {
  json k = json::array();
  for (Eigen::Index j = 0; j < d.kernel_basis.cols(); ++j) k.push_back(to_json(Vec(d.kernel_basis.col(j))));
  return {{"d", d.d}, {"zero_multiplicity", d.zero_multiplicity}, {"spectral_gap", d.spectral_gap}, {"kernel_basis", k}};
}

json to_json(const ManifoldSample& s) {
  json pts = json::array();
  for (const auto& p : s.points) pts.push_back(to_json(p));
  json sing = json::array();
  for (const auto& p : s.singular_points) sing.push_back(to_json(p));
  return {{"points", pts},
          {"local_dim", s.local_dim},
          {"closed", s.closed},
          {"singular_flags", s.singular_flags},
          {"singular_points", sing},
          {"length", s.length},
          {"stop_reason", s.stop_reason}};
}

json to_json(const Trajectory& t) {
  json j = {{"samples", t.times.size()},
            {"t_final", t.times.empty() ? 0.0 : t.times.back()},
            {"conserved_drift", t.conserved_drift},
            {"max_energy_increase", t.max_energy_increase},
            {"monotonicity_threshold", t.monotonicity_threshold},
            {"energy_initial", t.energy_series.empty() ? 0.0 : t.energy_series.front()},
            {"energy_final", t.energy_series.empty() ? 0.0 : t.energy_series.back()}};
  j["converged_to"] = t.converged_to ? to_json(*t.converged_to) : json(nullptr);
  if (!t.states.empty()) j["x_final"] = to_json(t.states.back());
  return j;
}

json to_json(const BasinReport& r) {
  return {{"label", r.label},
          {"trials", r.trials},
          {"converged", r.converged},
          {"returned_fraction", r.returned_fraction},
          {"max_excursion", r.max_excursion},
          {"max_normal_excursion", r.max_normal_excursion},
          {"max_tangential_drift", r.max_tangential_drift}};
}

json to_json(const BlockStability& b) {
  json blocks = json::array();
  for (const auto& br : b.blocks)
    blocks.push_back({{"vertices", br.vertices}, {"residual", br.residual}, {"report", to_json(br.report)}});
  json combined = to_string(b.combined);
  if (b.combined == Verdict::StableNormallyHyperbolic)
    combined = to_string(b.combined) + "(" + std::to_string(b.combined_normal_dim) + ")";
  return {{"blocks", blocks}, {"combined", combined}, {"direct", to_json(b.direct)}, {"consistent", b.consistent}};
}

json to_json(const BlockDecomposition& b) {
  return {{"blocks", b.blocks}, {"block_edges", b.block_edges}, {"cut_vertices", b.cut_vertices}};
}

json to_json(const GeneralizedCoveringCheck& c) {
  return {{"valid", c.valid},
          {"fiber_degrees", c.fiber_degrees},
          {"equitable", c.equitable},
          {"ordinary_covering", c.ordinary_covering}};
}

json to_json(const Orbit& o) {
  json m = json::array();
  for (const auto& mem : o.members) m.push_back({{"point", to_json(mem.point)}, {"sigma", mem.first_sigma}});
  return {{"members", m}, {"stabilizer", o.stabilizer}, {"fixed_by_nontrivial", o.fixed_by_nontrivial}};
}

void write_manifold_csv(std::ostream& out, const ManifoldSample& s) {
  const Eigen::Index n = s.points.empty() ? 0 : s.points.front().x.size();
  out << "index";
  for (Eigen::Index i = 0; i < n; ++i) out << ",x" << i;
  out << ",local_dim,singular\n";
  for (std::size_t k = 0; k < s.points.size(); ++k) {
    out << k;
    for (Eigen::Index i = 0; i < n; ++i) out << ',' << num(s.points[k].x(i));
    const bool sing = std::find(s.singular_flags.begin(), s.singular_flags.end(), static_cast<int>(k)) !=
                      s.singular_flags.end();
    out << ',' << s.local_dim[k] << ',' << (sing ? 1 : 0) << '\n';
  }
}

void write_spectrum_csv(std::ostream& out, const std::vector<StabilityReport>& reports) {
  const Eigen::Index n = reports.empty() ? 0 : reports.front().spectrum.size();
  out << "index";
  for (Eigen::Index i = 0; i < n; ++i) out << ",lambda" << i;
  out << ",zero_multiplicity,verdict\n";
  for (std::size_t k = 0; k < reports.size(); ++k) {
    out << k;
    for (Eigen::Index i = 0; i < n; ++i) out << ',' << num(reports[k].spectrum(i));
    out << ',' << reports[k].zero_multiplicity << ',' << reports[k].verdict_label() << '\n';
  }
}

void write_trajectory_csv(std::ostream& out, const Trajectory& t) {
  const Eigen::Index n = t.states.empty() ? 0 : t.states.front().size();
  out << "t";
  for (Eigen::Index i = 0; i < n; ++i) out << ",x" << i;
  out << ",energy\n";
  for (std::size_t k = 0; k < t.times.size(); ++k) {
    out << num(t.times[k]);
    for (Eigen::Index i = 0; i < n; ++i) out << ',' << num(t.states[k](i));
    out << ',' << num(t.energy_series[k]) << '\n';
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path);
  out << text;
}

}  // namespace gdyn
