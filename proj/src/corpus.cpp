#include "gdyn/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>

#include "gdyn/continuation.hpp"
#include "gdyn/equilibria.hpp"
#include "gdyn/errors.hpp"
#include "gdyn/field.hpp"
#include "gdyn/generators.hpp"
#include "gdyn/homology.hpp"
#include "gdyn/simulator.hpp"
#include "gdyn/stability.hpp"

namespace gdyn {

namespace constructions {

Vec book_point(const std::vector<double>& free_angles) {
  const auto p = static_cast<Eigen::Index>(free_angles.size()) + 1;
  Vec x(p + 2);
  x(0) = 0.0;
  x(1) = std::numbers::pi;
  double s = 0.0;
  for (std::size_t k = 0; k < free_angles.size(); ++k) {
    x(static_cast<Eigen::Index>(k) + 2) = free_angles[k];
    s += std::sin(free_angles[k]);
  }
  if (std::abs(s) > 1.0) throw Error(ErrorCode::InvalidInput, "free angles leave no solution for the last page");
  x(p + 1) = -std::asin(s);
  return x;
}

Vec theta_point(double a, double b) {
  const double s = std::sin(a) + std::sin(b);
  if (std::abs(s) > 1.0) throw Error(ErrorCode::InvalidInput, "sin a + sin b must lie in [-1, 1]");
  Vec x(5);
  x << 0.0, std::numbers::pi, a, b, -std::asin(s);
  return x;
}

Vec k3_cubic_state(double lambda) {
  // x - x^3 = lambda  <=>  x^3 - x + lambda = 0
  const auto roots = polynomial_roots({lambda, -1.0, 0.0, 1.0}, -2.0, 2.0);
  if (roots.size() != 3) throw Error(ErrorCode::InvalidInput, "x - x^3 = lambda needs three real roots");
  Vec x(3);
  x << 0.0, roots[0].value, roots[0].value + roots[1].value;
  return x;
}

Vec balanced_angles(int n, std::uint64_t seed) {
  if (n < 3) throw Error(ErrorCode::InvalidInput, "balanced angles need n >= 3");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  for (;;) {
    Vec x(n);
    std::complex<double> r = 0.0;
    for (int i = 0; i < n - 2; ++i) {
      x(i) = u(rng);
      r += std::polar(1.0, x(i));
    }
    const double a = std::abs(r);
    if (a > 1.9 || a < 0.1) continue;
    const double phi = std::arg(-r), alpha = std::acos(a / 2.0);
    x(n - 2) = phi + alpha;
    x(n - 1) = phi - alpha;
    return (x.array() - x(0)).matrix();
  }
}

Vec k4_curve_state(double t) {
  Vec x(4);
  x << 0.0, t, std::numbers::pi, std::numbers::pi + t;
  return x;
}

}  // namespace constructions

namespace {

constexpr double kPi = std::numbers::pi;

struct Check {
  std::string id;
  std::string claim;
  std::function<CheckOutcome(const CorpusExample&, std::uint64_t)> run;
};

struct Entry {
  std::string name;
  std::function<CorpusExample()> make;
  std::vector<Check> checks;
};

CheckOutcome outcome(bool passed, json observed) { return {"", "", passed, std::move(observed)}; }

Coupling sin1() { return Coupling::sine_sum({{1, 1.0}}); }

AtlasOptions atlas_opts(int starts, std::uint64_t seed, double box = kPi) {
  AtlasOptions o;
  o.starts = starts;
  o.seed = seed;
  o.box_radius = box;
  return o;
}

CheckOutcome check_bounds(const CorpusExample& ex, int dim_h1, std::optional<int> cc, std::optional<int> chain) {
  const auto r = dimension_bounds(ex.graph, ex.coupling);
  bool ok = r.dim_h1 == dim_h1 && r.cc_exact;
  if (cc) ok = ok && r.cc == *cc;
  if (chain) ok = ok && r.bounds.chain_bound == chain && r.applicable_chain_bound;
  return outcome(ok, to_json(r));
}

CheckOutcome check_local_dim(const CorpusExample& ex, int expected) {
  json obs = json::array();
  bool ok = !ex.points.empty();
  for (const auto& x : ex.points) {
    const auto p = make_point(ex.graph, ex.coupling, x);
    const auto ld = local_dimension(ex.graph, ex.coupling, p);
    ok = ok && p.residual <= Tolerances{}.eq_threshold(x) && ld.d == expected;
    obs.push_back({{"residual", p.residual}, {"d", ld.d}, {"spectral_gap", ld.spectral_gap}});
  }
  return outcome(ok, obs);
}

CheckOutcome check_zero_patterns(const CorpusExample& ex) {
  const auto pts = zero_pattern_equilibria(ex.graph, ex.coupling, kPi);
  const std::size_t expected = std::size_t{1} << (ex.graph.n() - 1);
  double worst = 0.0;
  bool distinct = true;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    worst = std::max(worst, pts[i].residual);
    for (std::size_t j = 0; j < i; ++j)
      if (equivalence_distance(pts[i].y, pts[j].y, ex.coupling.period()) <= 1e-6) distinct = false;
  }
  return outcome(pts.size() == expected && distinct && worst <= 1e-12,
                 {{"count", pts.size()}, {"expected", expected}, {"pairwise_distinct", distinct}, {"max_residual", worst}});
}

std::vector<Entry> build_registry() {
  std::vector<Entry> reg;

  reg.push_back({"k4-sin",
                 [] {
                   return CorpusExample{"k4-sin", "complete graph K4 with f = sin", graphs::complete(4), sin1(),
                                        std::nullopt, std::nullopt, {constructions::k4_curve_state(0.7)}, {}};
                 },
                 {{"atlas-stable", "at least one isolated equilibrium is linearly stable up to symmetry",
                   [](const CorpusExample& ex, std::uint64_t seed) {
                     const auto atlas = multistart_atlas(ex.graph, ex.coupling, atlas_opts(2000, seed));
                     int stable = 0;
                     for (const auto& p : atlas.points)
                       if (local_dimension(ex.graph, ex.coupling, p).d == 0 &&
                           classify(ex.graph, ex.coupling, p).verdict == Verdict::LinearlyStableUpToSymmetry)
                         ++stable;
                     return outcome(stable >= 1, {{"atlas_points", atlas.points.size()}, {"isolated_stable", stable}});
                   }},
                  {"atlas-saddles", "at least four isolated equilibria have a negative Hessian eigenvalue",
                   [](const CorpusExample& ex, std::uint64_t seed) {
                     const auto atlas = multistart_atlas(ex.graph, ex.coupling, atlas_opts(2000, seed));
                     int saddles = 0;
                     for (const auto& p : atlas.points)
                       if (local_dimension(ex.graph, ex.coupling, p).d == 0 &&
                           classify(ex.graph, ex.coupling, p).verdict == Verdict::Unstable)
                         ++saddles;
                     return outcome(saddles >= 4, {{"isolated_unstable", saddles}});
                   }},
                  {"closed-unstable-curve", "a multistart point of local dimension 1 continues to a closed curve of unstable equilibria",
                   [](const CorpusExample& ex, std::uint64_t seed) {
                     const auto atlas = multistart_atlas(ex.graph, ex.coupling, atlas_opts(2000, seed));
                     for (const auto& p : atlas.points) {
                       if (local_dimension(ex.graph, ex.coupling, p).d != 1) continue;
                       const auto s = trace_curve(ex.graph, ex.coupling, p);
                       bool all = s.closed;
                       for (std::size_t i = 0; i < s.points.size(); ++i) {
                         const bool flagged = std::find(s.singular_flags.begin(), s.singular_flags.end(),
                                                        static_cast<int>(i)) != s.singular_flags.end();
                         all = all && (flagged || s.local_dim[i] == 1) &&
                               classify(ex.graph, ex.coupling, s.points[i]).verdict == Verdict::Unstable;
                       }
                       return outcome(all, {{"closed", s.closed},
                                            {"points", s.points.size()},
                                            {"length", s.length},
                                            {"singular_flags", s.singular_flags}});
                     }
                     return outcome(false, {{"reason", "no point of local dimension 1 in the atlas"}});
                   }},
                  {"circle-length", "the circle through (0, t, pi, pi + t) has edge-space length 4 pi within 1%",
                   [](const CorpusExample& ex, std::uint64_t) {
                     const auto s = trace_curve(ex.graph, ex.coupling, make_point(ex.graph, ex.coupling, ex.points[0]));
                     const double oracle = 4.0 * kPi;
                     return outcome(s.closed && std::abs(s.length - oracle) <= 0.01 * oracle,
                                    {{"length", s.length}, {"oracle", oracle}, {"closed", s.closed}});
                   }}}});

  reg.push_back({"c3-cubic",
                 [] {
                   Vec x(3);
                   x << 0.0, 1.0, 0.0;
                   return CorpusExample{"c3-cubic", "triangle C3 with f = x^3 - x", graphs::cycle(3),
                                        Coupling::odd_polynomial({-1.0, 1.0}), std::nullopt, std::nullopt, {x}, {}};
                 },
                 {{"closed-stable-curve", "continuation from (0, 1, 0) closes and every point is StableNormallyHyperbolic(1)",
                   [](const CorpusExample& ex, std::uint64_t) {
                     const auto s = trace_curve(ex.graph, ex.coupling, make_point(ex.graph, ex.coupling, ex.points[0]));
                     bool all = s.closed;
                     for (const auto& p : s.points) {
                       const auto r = classify(ex.graph, ex.coupling, p);
                       all = all && r.verdict == Verdict::StableNormallyHyperbolic && r.normal_dim == 1;
                     }
                     return outcome(all, {{"closed", s.closed}, {"points", s.points.size()}, {"length", s.length}});
                   }},
                  {"isolated-unstable", "multistart finds an equilibrium with an eigenvalue below -0.1",
                   [](const CorpusExample& ex, std::uint64_t seed) {
                     const auto atlas = multistart_atlas(ex.graph, ex.coupling, atlas_opts(500, seed, 2.0));
                     double lowest = 0.0;
                     for (const auto& p : atlas.points)
                       lowest = std::min(lowest, classify(ex.graph, ex.coupling, p).spectrum(0));
                     return outcome(lowest < -0.1, {{"min_eigenvalue", lowest}, {"atlas_points", atlas.points.size()}});
                   }}}});

  reg.push_back({"house-sin",
                 [] {
                   return CorpusExample{"house-sin", "square with a roof triangle, f = sin", graphs::house(), sin1(),
                                        std::nullopt, std::nullopt, {}, {}};
                 },
                 {{"bounds", "two cycles sharing one edge: dim H1 = 2, cc = 2, chain bound 1",
                   [](const CorpusExample& ex, std::uint64_t) { return check_bounds(ex, 2, 2, 1); }}}});

  reg.push_back({"theta-sin",
                 [] {
                   return CorpusExample{"theta-sin", "theta graph K_{2,3}, f = sin", graphs::theta(), sin1(),
                                        std::nullopt, std::nullopt, {constructions::theta_point(0.3, 0.5)}, {}};
                 },
                 {{"local-dim", "(0, pi, a, b, c) with sin a + sin b + sin c = 0 has local dimension 2",
                   [](const CorpusExample& ex, std::uint64_t) { return check_local_dim(ex, 2); }},
                  {"cloud", "manifold sampling returns a cloud of local dimension 2 points",
                   [](const CorpusExample& ex, std::uint64_t) {
                     SampleOptions so;
                     so.budget = 60;
                     const auto s = sample_manifold(ex.graph, ex.coupling, make_point(ex.graph, ex.coupling, ex.points[0]), so);
                     int two = 0;
                     for (int d : s.local_dim) two += d == 2 ? 1 : 0;
                     return outcome(s.points.size() >= 20 && two >= static_cast<int>(s.points.size()) * 9 / 10,
                                    {{"points", s.points.size()}, {"local_dim_2", two}});
                   }},
                  {"bounds", "dim H1 = 2 and every cycle pair shares two edges, so cc = 1",
                   [](const CorpusExample& ex, std::uint64_t) { return check_bounds(ex, 2, 1, 2); }}}});

  for (int p : {2, 3, 5}) {
    const std::string name = "book" + std::to_string(p) + "-sin";
    std::vector<double> free;
    for (int k = 0; k < p - 1; ++k) free.push_back(0.2 + 0.37 * k);
    if (p == 5) free = {0.4, -1.1, 0.7, 2.6};
    reg.push_back({name,
                   [name, p, free] {
                     return CorpusExample{name, "triangular book B_" + std::to_string(p) + ", f = sin as a series with P = pi",
                                          graphs::book(p), Coupling::sine_series(kPi, {{1, 1.0}}), std::nullopt,
                                          std::nullopt, {constructions::book_point(free)}, {}};
                   },
                   {{"local-dim", "a generic page configuration has local dimension p - 1",
                     [p](const CorpusExample& ex, std::uint64_t) { return check_local_dim(ex, p - 1); }},
                    {"bounds", "dim H1 = p, cc = 2, chain bound p - 1",
                     [p](const CorpusExample& ex, std::uint64_t) { return check_bounds(ex, p, 2, p - 1); }}}});
  }

  reg.push_back(
      {"fig6-cover",
       [] {
         Vec y = constructions::k3_cubic_state(0.17);
         VertexMap phi = graphs::asymmetric7_cover();
         Vec x(7);
         for (int i = 0; i < 7; ++i) x(i) = y(phi[static_cast<std::size_t>(i)]);
         return CorpusExample{"fig6-cover", "asymmetric 7-vertex graph covering K3, f = x - x^3", graphs::asymmetric7(),
                              Coupling::odd_polynomial({1.0, -1.0}), graphs::complete(3), phi, {x}, {}};
       },
       {{"generalized-cover", "phi is a generalized covering onto K3",
         [](const CorpusExample& ex, std::uint64_t) {
           const auto c = is_generalized_covering(*ex.phi, ex.graph, *ex.target);
           return outcome(c.valid, to_json(c));
         }},
        {"asymmetric", "the only automorphism is the identity",
         [](const CorpusExample& ex, std::uint64_t) {
           const auto a = automorphisms(ex.graph);
           return outcome(a.complete && a.perms.size() == 1, {{"automorphisms", a.perms.size()}});
         }},
        {"lift", "K3 equilibria (0, x1, x1 + x2) lift with residual <= 1e-9 for 20 values |lambda| <= 0.3",
         [](const CorpusExample& ex, std::uint64_t) {
           double worst = 0.0;
           for (int k = 0; k < 20; ++k) {
             const double lambda = -0.3 + 0.6 * k / 19.0;
             const auto p = lift_equilibrium(*ex.phi, ex.graph, *ex.target, ex.coupling, constructions::k3_cubic_state(lambda));
             worst = std::max(worst, p.residual);
           }
           return outcome(worst <= 1e-9, {{"max_residual", worst}});
         }},
        {"lift-dimension", "a lifted generic point has local dimension >= 1",
         [](const CorpusExample& ex, std::uint64_t) {
           const auto ld = local_dimension(ex.graph, ex.coupling, make_point(ex.graph, ex.coupling, ex.points[0]));
           return outcome(ld.d >= 1, {{"d", ld.d}});
         }}}});

  reg.push_back(
      {"k4-bifurcation",
       [] {
         return CorpusExample{"k4-bifurcation", "K4 with f = sin x - sin 3x along (0, t, pi, pi + t)", graphs::complete(4),
                              Coupling::sine_sum({{1, 1.0}, {3, -1.0}}), std::nullopt, std::nullopt,
                              {constructions::k4_curve_state(0.1)}, {}};
       },
       {{"sweep", "the curve is made of equilibria whose verdict alternates Unstable / StableNormallyHyperbolic(1)",
         [](const CorpusExample& ex, std::uint64_t) {
           std::vector<std::string> seq;
           double worst = 0.0;
           bool eq = true;
           const int steps = static_cast<int>(std::floor(2.0 * kPi / 0.02));
           for (int k = 0; k <= steps; ++k) {
             const auto p = make_point(ex.graph, ex.coupling, constructions::k4_curve_state(0.02 * k));
             eq = eq && p.residual <= Tolerances{}.eq_threshold(p.x);
             worst = std::max(worst, p.residual);
             const auto label = classify(ex.graph, ex.coupling, p).verdict_label();
             if (seq.empty() || seq.back() != label) seq.push_back(label);
           }
           int alternations = 0;
           for (std::size_t i = 1; i < seq.size(); ++i)
             if ((seq[i - 1] == "Unstable" && seq[i] == "StableNormallyHyperbolic(1)") ||
                 (seq[i] == "Unstable" && seq[i - 1] == "StableNormallyHyperbolic(1)"))
               ++alternations;
           return outcome(eq && alternations >= 2,
                          {{"max_residual", worst}, {"alternations", alternations}, {"verdict_sequence", seq}});
         }},
        {"t-pi", "at t = pi the zero multiplicity rises by exactly one and the verdict class is kept",
         [](const CorpusExample& ex, std::uint64_t) {
           const auto at = classify(ex.graph, ex.coupling, make_point(ex.graph, ex.coupling, constructions::k4_curve_state(kPi)));
           const auto before = classify(ex.graph, ex.coupling, make_point(ex.graph, ex.coupling, constructions::k4_curve_state(kPi - 0.02)));
           const auto after = classify(ex.graph, ex.coupling, make_point(ex.graph, ex.coupling, constructions::k4_curve_state(kPi + 0.02)));
           const int generic = before.zero_multiplicity;
           const bool ok = after.zero_multiplicity == generic && at.zero_multiplicity == generic + 1 &&
                           at.verdict == before.verdict && at.verdict == after.verdict;
           return outcome(ok, {{"at", to_json(at)}, {"before", before.verdict_label()}, {"after", after.verdict_label()}});
         }},
        {"trace-flag", "tracing from (0, 0.1, pi, pi + 0.1) raises a singular flag at t = pi",
         [](const CorpusExample& ex, std::uint64_t) {
           const auto s = trace_curve(ex.graph, ex.coupling, make_point(ex.graph, ex.coupling, ex.points[0]));
           json ts = json::array();
           bool found = false;
           for (const auto& sp : s.singular_points) {
             const double t = sp.y(0);  // edge (0,1) carries x1 - x0 = t
             double w = std::remainder(t - kPi, 2.0 * kPi);
             found = found || std::abs(w) < 1e-4;
             ts.push_back(t);
           }
           return outcome(found, {{"singular_t", ts}, {"closed", s.closed}});
         }}}});

  reg.push_back(
      {"kn-antisin",
       [] {
         return CorpusExample{"kn-antisin", "K5 with f(x) = sin(-x)", graphs::complete(5), Coupling::sine_sum({{1, -1.0}}),
                              std::nullopt, std::nullopt, {constructions::balanced_angles(5, 99)}, {}};
       },
       {{"energy-identity", "E(x) - E(0) = |sum exp(i x_j)|^2 / 2 - n^2 / 2",
         [](const CorpusExample& ex, std::uint64_t seed) {
           std::mt19937_64 rng(seed);
           std::uniform_real_distribution<double> u(-kPi, kPi);
           double worst = 0.0;
           for (int k = 0; k < 20; ++k) {
             Vec x(5);
             for (int i = 0; i < 5; ++i) x(i) = u(rng);
             std::complex<double> z = 0.0;
             for (int i = 0; i < 5; ++i) z += std::polar(1.0, x(i));
             const double lhs = energy(ex.graph, ex.coupling, x) - energy(ex.graph, ex.coupling, Vec::Zero(5));
             worst = std::max(worst, std::abs(lhs - (0.5 * std::norm(z) - 12.5)));
           }
           return outcome(worst <= 1e-10, {{"max_error", worst}});
         }},
        {"minimizer", "a balanced configuration is StableNormallyHyperbolic(n - 3)",
         [](const CorpusExample& ex, std::uint64_t) {
           const auto r = classify(ex.graph, ex.coupling, make_point(ex.graph, ex.coupling, ex.points[0]));
           return outcome(r.verdict == Verdict::StableNormallyHyperbolic && r.normal_dim == 2, to_json(r));
         }},
        {"drift", "perturbed trajectories stay near the minimizing manifold (empirical evidence)",
         [](const CorpusExample& ex, std::uint64_t seed) {
           BasinOptions bo;
           bo.trials = 8;
           bo.seed = seed;
           bo.radius = 0.05;
           const auto r = basin_sample(ex.graph, ex.coupling, make_point(ex.graph, ex.coupling, ex.points[0]), bo);
           return outcome(r.returned_fraction == 1.0, to_json(r));
         }}}});

  reg.push_back({"snake",
                 [] {
                   return CorpusExample{"snake", "ladder of three squares, f = x^3 - x", graphs::ladder(3),
                                        Coupling::odd_polynomial({-1.0, 1.0}), std::nullopt, std::nullopt, {}, {}};
                 },
                 {{"bounds", "three squares in a row: dim H1 = 3, cc = 3, chain bound 1",
                   [](const CorpusExample& ex, std::uint64_t) { return check_bounds(ex, 3, 3, 1); }}}});

  reg.push_back({"wheel9-sin",
                 [] {
                   return CorpusExample{"wheel9-sin", "wheel on 9 vertices, f = sin", graphs::wheel(9), sin1(),
                                        std::nullopt, std::nullopt, {}, {}};
                 },
                 {{"bounds", "dim H1 = n - 1 = 8 with an exactly computed cycle chain number",
                   [](const CorpusExample& ex, std::uint64_t) { return check_bounds(ex, 8, std::nullopt, std::nullopt); }}}});

  for (const auto& [name, make_graph] :
       std::vector<std::pair<std::string, std::function<Graph()>>>{{"p3-zero", [] { return graphs::path(3); }},
                                                                   {"s4-zero", [] { return graphs::star(3); }},
                                                                   {"c5-zero", [] { return graphs::cycle(5); }}}) {
    reg.push_back({name,
                   [name, make_graph] {
                     return CorpusExample{name, "zero patterns with z = pi, f = sin", make_graph(), sin1(), std::nullopt,
                                          std::nullopt, {}, {}};
                   },
                   {{"zero-patterns", "exactly 2^(n-1) pairwise distinct equilibria with entries in {0, pi}",
                     [](const CorpusExample& ex, std::uint64_t) { return check_zero_patterns(ex); }}}});
  }

  reg.push_back(
      {"bowtie-sin",
       [] {
         Vec unstable(5);
         unstable << 0.0, kPi, 0.0, 0.0, 0.0;
         return CorpusExample{"bowtie-sin", "two triangles sharing vertex 0, f = sin",
                              graphs::glue(graphs::cycle(3), 0, graphs::cycle(3), 0), sin1(), std::nullopt, std::nullopt,
                              {Vec::Zero(5), unstable}, {}};
       },
       {{"blocks", "two blocks meeting in one cut vertex",
         [](const CorpusExample& ex, std::uint64_t) {
           const auto b = block_decomposition(ex.graph);
           return outcome(b.blocks.size() == 2 && b.cut_vertices.size() == 1, to_json(b));
         }},
        {"zero-stable", "x = 0 is stable on both blocks and on the whole graph",
         [](const CorpusExample& ex, std::uint64_t) {
           const auto b = block_stability(ex.graph, ex.coupling, ex.points[0]);
           return outcome(b.consistent && b.combined == Verdict::LinearlyStableUpToSymmetry, to_json(b));
         }},
        {"composed-unstable", "an unstable block pattern glued to 0 is unstable overall",
         [](const CorpusExample& ex, std::uint64_t) {
           const auto b = block_stability(ex.graph, ex.coupling, ex.points[1]);
           return outcome(b.consistent && b.combined == Verdict::Unstable, to_json(b));
         }}}});

  reg.push_back({"tree-sin",
                 [] {
                   return CorpusExample{"tree-sin", "tree on 6 vertices, f = sin",
                                        graphs::glue(graphs::path(4), 1, graphs::star(2), 0), sin1(), std::nullopt,
                                        std::nullopt, {}, {}};
                 },
                 {{"bounds", "a tree has dim H1 = 0, so every equilibrium is isolated",
                   [](const CorpusExample& ex, std::uint64_t) {
                     const auto r = dimension_bounds(ex.graph, ex.coupling);
                     return outcome(r.dim_h1 == 0 && r.cc == 0 && r.min_applicable_bound() == 0, to_json(r));
                   }}}});

  reg.push_back(
      {"k4-increasing",
       [] {
         return CorpusExample{"k4-increasing", "K4 with the increasing coupling f = x + x^3", graphs::complete(4),
                              Coupling::odd_polynomial({1.0, 1.0}), std::nullopt, std::nullopt, {}, {}};
       },
       {{"prediction", "f is increasing, so 0 is the only equilibrium and attracts everything",
         [](const CorpusExample& ex, std::uint64_t) {
           const auto p = predict_equilibria_class(ex.graph, ex.coupling);
           return outcome(p.cls == EquilibriaClass::OnlyZero && p.global_convergence,
                          {{"class", to_string(p.cls)}, {"global_convergence", p.global_convergence}});
         }},
        {"convergence", "random trajectories converge to a translate of 0",
         [](const CorpusExample& ex, std::uint64_t seed) {
           std::mt19937_64 rng(seed);
           std::uniform_real_distribution<double> u(-2.0, 2.0);
           double worst = 0.0;
           bool all = true;
           for (int k = 0; k < 5; ++k) {
             Vec x0(4);
             for (int i = 0; i < 4; ++i) x0(i) = u(rng);
             const auto tr = integrate(ex.graph, ex.coupling, x0);
             all = all && tr.converged_to.has_value();
             if (tr.converged_to) worst = std::max(worst, tr.converged_to->canonical.lpNorm<Eigen::Infinity>());
           }
           return outcome(all && worst <= 1e-6, {{"max_canonical_inf_norm", worst}});
         }}}});

  return reg;
}

const std::vector<Entry>& registry() {
  static const std::vector<Entry> reg = build_registry();
  return reg;
}

const Entry& find_entry(const std::string& name) {
  for (const auto& e : registry())
    if (e.name == name) return e;
  throw Error(ErrorCode::UnknownExample, "no corpus example named \"" + name + "\"");
}

}  // namespace

std::vector<std::string> corpus_names() {
  std::vector<std::string> out;
  for (const auto& e : registry()) out.push_back(e.name);
  return out;
}

CorpusExample load_corpus_example(const std::string& name) {
  const auto& e = find_entry(name);
  auto ex = e.make();
  for (const auto& c : e.checks) ex.expectations.push_back({c.id, c.claim});
  ex.expectations.push_back({"bound-compliance", "local dimensions at regular points never exceed the smallest applicable bound"});
  return ex;
}

ObservedDimensions observed_local_dims(const CorpusExample& ex, int starts, std::uint64_t seed) {
  ObservedDimensions o;
  auto visit = [&](const EquilibriumPoint& p) {
    const int d = local_dimension(ex.graph, ex.coupling, p).d;
    ++o.points;
    o.max_kernel = std::max(o.max_kernel, d);
    if (d > 0 && !is_regular_point(ex.graph, ex.coupling, p)) {
      ++o.singular_points;
      return;
    }
    o.max_regular = std::max(o.max_regular, d);
  };
  for (const auto& x : ex.points) {
    const auto p = make_point(ex.graph, ex.coupling, x);
    if (p.residual <= Tolerances{}.eq_threshold(x)) visit(p);
  }
  if (ex.graph.m() > 0)
    for (const auto& p : multistart_atlas(ex.graph, ex.coupling, atlas_opts(starts, seed)).points) visit(p);
  return o;
}

std::vector<CheckOutcome> run_corpus_example(const CorpusExample& ex, std::uint64_t seed) {
  const auto& e = find_entry(ex.name);
  std::vector<CheckOutcome> out;
  for (const auto& c : e.checks) {
    CheckOutcome o;
    try {
      o = c.run(ex, seed);
    } catch (const Error& err) {
      o = outcome(false, {{"error", err.what()}});
    }
    o.id = c.id;
    o.claim = c.claim;
    out.push_back(std::move(o));
  }
  const auto bounds = dimension_bounds(ex.graph, ex.coupling);
  const auto obs = observed_local_dims(ex, 200, seed);
  out.push_back({"bound-compliance", ex.expectations.back().claim, obs.max_regular <= bounds.min_applicable_bound(),
                 {{"max_local_dim", obs.max_regular},
                  {"max_kernel_count", obs.max_kernel},
                  {"points", obs.points},
                  {"singular_points", obs.singular_points},
                  {"min_applicable_bound", bounds.min_applicable_bound()}}});
  return out;
}

json to_json(const CorpusExample& ex) {
  json j = {{"name", ex.name}, {"summary", ex.summary}, {"graph", to_json(ex.graph)}, {"coupling", to_json(ex.coupling)}};
  if (ex.target) j["target"] = to_json(*ex.target);
  if (ex.phi) j["phi"] = *ex.phi;
  json pts = json::array();
  for (const auto& x : ex.points) pts.push_back(to_json(x));
  j["points"] = pts;
  json exps = json::array();
  for (const auto& e : ex.expectations) exps.push_back({{"id", e.id}, {"claim", e.claim}});
  j["expectations"] = exps;
  return j;
}

json to_json(const CheckOutcome& c) {
  return {{"id", c.id}, {"claim", c.claim}, {"passed", c.passed}, {"observed", c.observed}};
}

}  // namespace gdyn
