#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gdyn/coupling.hpp"
#include "gdyn/equilibria.hpp"
#include "gdyn/graph.hpp"
#include "gdyn/tolerances.hpp"

namespace gdyn {

struct IntegrateOptions {
  double t_end = 200.0;
  double rtol = 1e-8;
  double atol = 1e-10;
  double min_step = 1e-12;
  double initial_step = 1e-2;
  bool stop_on_convergence = true;
  Tolerances tol;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Vec> states;
  std::vector<double> energy_series;
  double conserved_drift = 0.0;       // max over components of the change of the component sum
  double max_energy_increase = 0.0;   // largest rise between consecutive samples
  double monotonicity_threshold = 0.0;
  // set once the residual drops below T_eq, or a Newton polish of the state lands within 1e-6 of it
  std::optional<EquilibriumPoint> converged_to;
};

/// Dormand-Prince 5(4) with error control. Throws StepUnderflow, MonotonicityViolation.
Trajectory integrate(const Graph& g, const Coupling& f, const Vec& x0, const IntegrateOptions& opt = {});

struct BasinOptions {
  double radius = 0.1;
  int trials = 20;
  std::uint64_t seed = 12345;
  IntegrateOptions integrate;
};

struct BasinReport {
  std::string label = "empirical evidence";
  int trials = 0;
  int converged = 0;
  double returned_fraction = 0.0;  // final distance to the component of p within radius / 2
  double max_excursion = 0.0;      // largest edge-space distance from p along any trajectory
  double max_normal_excursion = 0.0;  // same, after removing the tangent directions at p
  double max_tangential_drift = 0.0;  // final displacement along the tangent directions
};

BasinReport basin_sample(const Graph& g, const Coupling& f, const EquilibriumPoint& p, const BasinOptions& opt = {});

namespace serial {
BasinReport basin_sample(const Graph& g, const Coupling& f, const EquilibriumPoint& p, const BasinOptions& opt = {});
}

}  // namespace gdyn
