#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gdyn/coupling.hpp"
#include "gdyn/graph.hpp"
#include "gdyn/tolerances.hpp"
#include "gdyn/types.hpp"

namespace gdyn {

struct EquilibriumPoint {
  Vec x;
  Vec y;  // B^T x
  double residual = 0.0;
  Vec canonical;  // x with per-component mean removed
};

/// Fills y, residual and canonical for the state x.
EquilibriumPoint make_point(const Graph& g, const Coupling& f, const Vec& x);

struct NewtonOptions {
  int max_iter = 100;
  Tolerances tol;
  double max_step = 2.0;  // infinity-norm cap on one Newton update
};

/// Damped truncated-pseudo-inverse Newton on F restricted to the complement of H0.
/// Throws NoConvergence.
EquilibriumPoint newton_solve(const Graph& g, const Coupling& f, const Vec& x0, const NewtonOptions& opt = {});

/// Edge-space distance; with a period T each coordinate difference is wrapped into (-T/2, T/2].
double equivalence_distance(const Vec& y, const Vec& y2, std::optional<double> period);

struct AtlasOptions {
  int starts = 200;
  std::uint64_t seed = 12345;
  double box_radius = 3.141592653589793;
  double dedup_distance = 1e-6;
  NewtonOptions newton;
};

struct EquilibriumAtlas {
  std::vector<EquilibriumPoint> points;
  double dedup_distance = 1e-6;
  std::optional<double> period;  // identification used in dedup
  int failures = 0;              // starts that did not converge
};

EquilibriumAtlas multistart_atlas(const Graph& g, const Coupling& f, const AtlasOptions& opt = {});

/// Sorts by (residual, canonical) and drops points within the dedup distance of an earlier one.
EquilibriumAtlas assemble_atlas(std::vector<EquilibriumPoint> found, std::optional<double> period,
                                double dedup_distance);

/// All 2^(n-1) states x_i in {0, z} with x_0 = 0. Throws NotARoot, NotConnected, GraphTooLarge.
std::vector<EquilibriumPoint> zero_pattern_equilibria(const Graph& g, const Coupling& f, double z);

struct MembershipReport {
  double skew_norm = 0.0;       // |sum_e y_e f(y_e)|
  double cycle_distance = 0.0;  // distance of f(y) from H1
  double cut_distance = 0.0;    // distance of y from H1-perp
  double threshold = 0.0;
  bool passes() const { return skew_norm <= threshold && cycle_distance <= threshold && cut_distance <= threshold; }
};

/// Thresholds at 10 T_eq.
MembershipReport membership_tests(const Graph& g, const Coupling& f, const EquilibriumPoint& p,
                                  const Tolerances& tol = {});

enum class EquilibriaClass { OnlyZero, Discrete, NoConclusion };
std::string to_string(EquilibriaClass c);

struct EquilibriaPrediction {
  EquilibriaClass cls = EquilibriaClass::NoConclusion;
  bool discrete = false;            // sign-definite on the positives
  bool global_convergence = false;  // f increasing
};

/// Throws InvalidInput on a graph without edges.
EquilibriaPrediction predict_equilibria_class(const Graph& g, const Coupling& f);

namespace serial {
EquilibriumAtlas multistart_atlas(const Graph& g, const Coupling& f, const AtlasOptions& opt = {});
}

}  // namespace gdyn
