#include "gdyn/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "gdyn/continuation.hpp"
#include "gdyn/corpus.hpp"
#include "gdyn/equilibria.hpp"
#include "gdyn/errors.hpp"
#include "gdyn/homology.hpp"
#include "gdyn/io.hpp"
#include "gdyn/parallel.hpp"
#include "gdyn/simulator.hpp"
#include "gdyn/stability.hpp"
#include "gdyn/symmetry.hpp"

namespace gdyn {

namespace {

struct RunConfig {
  std::string graph;
  std::string coupling;
  std::string target;
  std::string phi;
  std::string state;
  std::string out;
  std::string csv;
  std::string spectrum_csv;
  std::uint64_t seed = 12345;
  std::optional<int> threads;
  std::optional<double> t_eq, t_zero, t_rank;

  int starts = 200;
  double box = 3.141592653589793;
  std::string mode = "curve";
  double step = 0.05;
  int max_steps = 2000;
  int budget = 400;
  int direction = 0;
  std::optional<int> local_dim;
  double t_end = 200.0;
  double radius = 0.1;
  int trials = 20;
  int cap = 100000;
  std::string name;
  std::string dir = "data";

  Tolerances tolerances() const {
    Tolerances t;
    if (t_eq) t.eq = *t_eq;
    if (t_zero) t.zero = *t_zero;
    t.rank = t_rank;
    return t;
  }
};

void add_common(CLI::App* app, RunConfig& cfg, bool needs_coupling) {
  app->add_option("--graph", cfg.graph, "graph file (JSON or edge list)")->required();
  auto* c = app->add_option("--coupling", cfg.coupling, "coupling file or inline JSON");
  if (needs_coupling) c->required();
  app->add_option("--out", cfg.out, "write the JSON report here instead of stdout");
  app->add_option("--seed", cfg.seed, "random seed");
  app->add_option("--threads", cfg.threads, "worker thread cap (default: $OCL_THREADS)")->check(CLI::PositiveNumber);
  app->add_option("--t-eq", cfg.t_eq, "equilibrium residual tolerance")->check(CLI::PositiveNumber);
  app->add_option("--t-zero", cfg.t_zero, "relative zero-eigenvalue tolerance")->check(CLI::PositiveNumber);
  app->add_option("--t-rank", cfg.t_rank, "absolute rank cutoff")->check(CLI::PositiveNumber);
}

void add_state(CLI::App* app, RunConfig& cfg, const std::string& flag = "--x0") {
  app->add_option(flag, cfg.state, "state as inline JSON array or file")->required();
}

json load_json_source(const std::string& source) {
  const auto first = source.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (source[first] == '[' || source[first] == '{')) {
    try {
      return json::parse(source);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::InvalidInput, std::string("inline JSON: ") + e.what());
    }
  }
  return read_json_file(source);
}

void emit(const RunConfig& cfg, const json& report) {
  const auto text = dump(report);
  if (cfg.out.empty())
    std::cout << text;
  else
    write_text_file(cfg.out, text);
}

void emit_csv(const RunConfig& cfg, const std::function<void(std::ostream&)>& writer) {
  if (cfg.csv.empty()) return;
  std::ostringstream os;
  writer(os);
  write_text_file(cfg.csv, os.str());
}

void apply_threads(const RunConfig& cfg) {
  std::optional<int> t = cfg.threads;
  if (!t) {
    if (const char* env = std::getenv("OCL_THREADS"); env && *env) {
      try {
        t = std::stoi(env);
      } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidInput, "OCL_THREADS must be a positive integer");
      }
    }
  }
  set_thread_limit(t);
}

json run_bounds(const RunConfig& cfg) {
  const auto g = load_graph(cfg.graph);
  const auto f = load_coupling(cfg.coupling);
  return to_json(dimension_bounds(g, f));
}

json run_solve(const RunConfig& cfg) {
  const auto g = load_graph(cfg.graph);
  const auto f = load_coupling(cfg.coupling);
  AtlasOptions o;
  o.starts = cfg.starts;
  o.seed = cfg.seed;
  o.box_radius = cfg.box;
  o.newton.tol = cfg.tolerances();
  if (cfg.starts < 1) throw Error(ErrorCode::InvalidInput, "--starts must be >= 1");
  const auto atlas = multistart_atlas(g, f, o);
  json j = to_json(atlas);
  j["starts"] = cfg.starts;
  j["seed"] = cfg.seed;
  json cls = json::array();
  for (const auto& p : atlas.points) {
    const auto ld = local_dimension(g, f, p, o.newton.tol);
    const auto r = classify(g, f, p, ld.d, o.newton.tol);
    cls.push_back({{"local_dim", ld.d}, {"verdict", r.verdict_label()}});
  }
  j["classification"] = cls;
  return j;
}

EquilibriumPoint start_point(const Graph& g, const Coupling& f, const RunConfig& cfg) {
  const Vec x = vec_from_json(load_json_source(cfg.state));
  if (x.size() != g.n()) throw Error(ErrorCode::InvalidInput, "state length must equal the vertex count");
  NewtonOptions no;
  no.tol = cfg.tolerances();
  return newton_solve(g, f, x, no);
}

json run_continue(const RunConfig& cfg) {
  const auto g = load_graph(cfg.graph);
  const auto f = load_coupling(cfg.coupling);
  const auto p = start_point(g, f, cfg);
  ManifoldSample s;
  if (cfg.mode == "curve") {
    TraceOptions o;
    o.step = cfg.step;
    o.max_steps = cfg.max_steps;
    o.direction_index = cfg.direction;
    o.tol = cfg.tolerances();
    s = trace_curve(g, f, p, o);
  } else if (cfg.mode == "sample") {
    SampleOptions o;
    o.step = cfg.step;
    o.budget = cfg.budget;
    o.tol = cfg.tolerances();
    s = sample_manifold(g, f, p, o);
  } else {
    throw Error(ErrorCode::InvalidInput, "--mode must be curve or sample");
  }
  emit_csv(cfg, [&](std::ostream& os) { write_manifold_csv(os, s); });
  std::vector<StabilityReport> reports;
  json verdicts = json::array();
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    reports.push_back(classify(g, f, s.points[i], s.local_dim[i], cfg.tolerances()));
    verdicts.push_back(reports.back().verdict_label());
  }
  if (!cfg.spectrum_csv.empty()) {
    std::ostringstream os;
    write_spectrum_csv(os, reports);
    write_text_file(cfg.spectrum_csv, os.str());
  }
  json j = to_json(s);
  j["verdicts"] = verdicts;
  return j;
}

json run_stability(const RunConfig& cfg) {
  const auto g = load_graph(cfg.graph);
  const auto f = load_coupling(cfg.coupling);
  const auto tol = cfg.tolerances();
  const Vec x = vec_from_json(load_json_source(cfg.state));
  if (x.size() != g.n()) throw Error(ErrorCode::InvalidInput, "state length must equal the vertex count");
  const auto p = make_point(g, f, x);
  if (p.residual > tol.eq_threshold(x))
    throw Error(ErrorCode::NotAnEquilibrium, "residual " + std::to_string(p.residual) + " exceeds T_eq");
  const auto ld = local_dimension(g, f, p, tol);
  json j = to_json(classify(g, f, p, cfg.local_dim, tol));
  j["local_dimension"] = to_json(ld);
  j["membership"] = [&] {
    const auto m = membership_tests(g, f, p, tol);
    return json{{"skew_norm", m.skew_norm},
                {"cycle_distance", m.cycle_distance},
                {"cut_distance", m.cut_distance},
                {"threshold", m.threshold},
                {"passes", m.passes()}};
  }();
  return j;
}

json run_simulate(const RunConfig& cfg) {
  const auto g = load_graph(cfg.graph);
  const auto f = load_coupling(cfg.coupling);
  const Vec x0 = vec_from_json(load_json_source(cfg.state));
  if (x0.size() != g.n()) throw Error(ErrorCode::InvalidInput, "state length must equal the vertex count");
  IntegrateOptions o;
  o.t_end = cfg.t_end;
  o.tol = cfg.tolerances();
  const auto tr = integrate(g, f, x0, o);
  emit_csv(cfg, [&](std::ostream& os) { write_trajectory_csv(os, tr); });
  return to_json(tr);
}

json run_basin(const RunConfig& cfg) {
  const auto g = load_graph(cfg.graph);
  const auto f = load_coupling(cfg.coupling);
  const auto p = start_point(g, f, cfg);
  BasinOptions o;
  o.radius = cfg.radius;
  o.trials = cfg.trials;
  o.seed = cfg.seed;
  o.integrate.t_end = cfg.t_end;
  o.integrate.tol = cfg.tolerances();
  json j = to_json(basin_sample(g, f, p, o));
  j["equilibrium"] = to_json(p);
  return j;
}

json run_cover(const RunConfig& cfg, const std::string& action) {
  const auto g = load_graph(cfg.graph);
  const auto h = load_graph(cfg.target);
  if (action == "find") {
    const auto s = find_generalized_coverings(g, h, cfg.cap);
    json maps = json::array();
    for (const auto& m : s.maps) maps.push_back(m);
    return {{"count", s.maps.size()}, {"complete", s.complete}, {"maps", maps}};
  }
  const auto phi = vertex_map_from_json(load_json_source(cfg.phi));
  if (action == "check") return to_json(is_generalized_covering(phi, g, h));
  const auto f = load_coupling(cfg.coupling);
  const Vec y = vec_from_json(load_json_source(cfg.state));
  const auto p = lift_equilibrium(phi, g, h, f, y, cfg.tolerances());
  return {{"lifted", to_json(p)}, {"local_dimension", to_json(local_dimension(g, f, p, cfg.tolerances()))}};
}

json run_blocks(const RunConfig& cfg) {
  const auto g = load_graph(cfg.graph);
  json j = {{"decomposition", to_json(block_decomposition(g))}};
  if (!cfg.state.empty()) {
    if (cfg.coupling.empty()) throw Error(ErrorCode::InvalidInput, "--x0 needs --coupling");
    const auto f = load_coupling(cfg.coupling);
    const Vec x = vec_from_json(load_json_source(cfg.state));
    if (x.size() != g.n()) throw Error(ErrorCode::InvalidInput, "state length must equal the vertex count");
    j["stability"] = to_json(block_stability(g, f, x, cfg.tolerances()));
  }
  return j;
}

int run_corpus(const RunConfig& cfg, const std::string& action) {
  if (action == "list") {
    for (const auto& n : corpus_names()) std::cout << n << '\n';
    return 0;
  }
  if (action == "show") {
    emit(cfg, to_json(load_corpus_example(cfg.name)));
    return 0;
  }
  if (action == "export") {
    std::filesystem::create_directories(cfg.dir);
    for (const auto& n : corpus_names()) {
      const auto ex = load_corpus_example(n);
      write_text_file((std::filesystem::path(cfg.dir) / (n + ".json")).string(), dump(to_json(ex)));
    }
    std::cout << "exported " << corpus_names().size() << " examples to " << cfg.dir << '\n';
    return 0;
  }
  json report = json::array();
  int passed = 0, total = 0;
  for (const auto& n : corpus_names()) {
    const auto ex = load_corpus_example(n);
    json checks = json::array();
    for (const auto& c : run_corpus_example(ex, cfg.seed)) {
      ++total;
      passed += c.passed ? 1 : 0;
      std::cout << (c.passed ? "PASS  " : "FAIL  ") << n << " / " << c.id << '\n';
      checks.push_back(to_json(c));
    }
    report.push_back({{"example", n}, {"checks", checks}});
  }
  std::cout << passed << "/" << total << " checks passed\n";
  if (!cfg.out.empty()) write_text_file(cfg.out, dump({{"seed", cfg.seed}, {"examples", report}}));
  return 0;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"equilibria, stability and dynamics of coupled systems on graphs"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* bounds = app.add_subcommand("bounds", "dimension bounds and cycle chain number");
  add_common(bounds, cfg, true);

  auto* solve = app.add_subcommand("solve", "multistart equilibrium atlas");
  add_common(solve, cfg, true);
  solve->add_option("--starts", cfg.starts, "number of Newton starts");
  solve->add_option("--box", cfg.box, "start box half-width")->check(CLI::PositiveNumber);

  auto* cont = app.add_subcommand("continue", "trace or sample a manifold of equilibria");
  add_common(cont, cfg, true);
  add_state(cont, cfg);
  cont->add_option("--mode", cfg.mode, "curve or sample");
  cont->add_option("--step", cfg.step, "step length")->check(CLI::PositiveNumber);
  cont->add_option("--max-steps", cfg.max_steps, "curve step cap");
  cont->add_option("--budget", cfg.budget, "sample point budget");
  cont->add_option("--direction", cfg.direction, "kernel direction index");
  cont->add_option("--csv", cfg.csv, "also write points as CSV");
  cont->add_option("--spectrum-csv", cfg.spectrum_csv, "also write the Hessian spectrum at each point as CSV");

  auto* stab = app.add_subcommand("stability", "Hessian spectrum and verdict at an equilibrium");
  add_common(stab, cfg, true);
  add_state(stab, cfg, "--x");
  stab->add_option("--local-dim", cfg.local_dim, "known local dimension");

  auto* sim = app.add_subcommand("simulate", "integrate the gradient flow");
  add_common(sim, cfg, true);
  add_state(sim, cfg);
  sim->add_option("--t-end", cfg.t_end, "final time")->check(CLI::PositiveNumber);
  sim->add_option("--csv", cfg.csv, "also write the trajectory as CSV");

  auto* basin = app.add_subcommand("basin", "perturbation sampling around an equilibrium");
  add_common(basin, cfg, true);
  add_state(basin, cfg);
  basin->add_option("--radius", cfg.radius, "perturbation size")->check(CLI::PositiveNumber);
  basin->add_option("--trials", cfg.trials, "number of perturbations");
  basin->add_option("--t-end", cfg.t_end, "final time")->check(CLI::PositiveNumber);

  auto* cover = app.add_subcommand("cover", "generalized covering maps");
  cover->require_subcommand(1);
  std::string cover_action;
  for (const char* a : {"check", "find", "lift"}) {
    auto* sub = cover->add_subcommand(a);
    add_common(sub, cfg, std::string(a) == "lift");
    sub->add_option("--target", cfg.target, "target graph H")->required();
    if (std::string(a) != "find") sub->add_option("--phi", cfg.phi, "vertex map as JSON array or file")->required();
    if (std::string(a) == "find") sub->add_option("--cap", cfg.cap, "maximum number of maps");
    if (std::string(a) == "lift") add_state(sub, cfg, "--y");
    sub->callback([&cover_action, a] { cover_action = a; });
  }

  auto* blocks = app.add_subcommand("blocks", "block decomposition and blockwise stability");
  add_common(blocks, cfg, false);
  blocks->add_option("--x0", cfg.state, "equilibrium to classify blockwise");

  auto* corpus = app.add_subcommand("corpus", "built-in example corpus");
  corpus->require_subcommand(1);
  std::string corpus_action;
  for (const char* a : {"list", "show", "run-all", "export"}) {
    auto* sub = corpus->add_subcommand(a);
    sub->add_option("--out", cfg.out, "JSON output file");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--threads", cfg.threads, "worker thread cap")->check(CLI::PositiveNumber);
    if (std::string(a) == "show") sub->add_option("name", cfg.name, "example name")->required();
    if (std::string(a) == "export") sub->add_option("--dir", cfg.dir, "output directory");
    sub->callback([&corpus_action, a] { corpus_action = a; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    apply_threads(cfg);
    if (*bounds) emit(cfg, run_bounds(cfg));
    else if (*solve) emit(cfg, run_solve(cfg));
    else if (*cont) emit(cfg, run_continue(cfg));
    else if (*stab) emit(cfg, run_stability(cfg));
    else if (*sim) emit(cfg, run_simulate(cfg));
    else if (*basin) emit(cfg, run_basin(cfg));
    else if (*cover) emit(cfg, run_cover(cfg, cover_action));
    else if (*blocks) emit(cfg, run_blocks(cfg));
    else if (*corpus) return run_corpus(cfg, corpus_action);
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.numerical() ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace gdyn
