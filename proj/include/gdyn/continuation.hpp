#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gdyn/coupling.hpp"
#include "gdyn/equilibria.hpp"
#include "gdyn/graph.hpp"
#include "gdyn/tolerances.hpp"

namespace gdyn {

struct LocalDimension {
  int d = 0;
  Mat kernel_basis;  // n x d, orthonormal, orthogonal to H0
  int zero_multiplicity = 0;
  /// smallest |lambda| outside the zero bucket over the largest inside it
  double spectral_gap = 0.0;
};

LocalDimension local_dimension(const Graph& g, const Coupling& f, const EquilibriumPoint& p,
                               const Tolerances& tol = {});

struct ManifoldSample {
  std::vector<EquilibriumPoint> points;
  std::vector<int> local_dim;
  bool closed = false;
  std::vector<int> singular_flags;                // indices into points
  std::vector<EquilibriumPoint> singular_points;  // refined location behind each flag
  double length = 0.0;                            // edge-space arclength
  std::string stop_reason;
};

struct TraceOptions {
  int direction_index = 0;
  double step = 0.05;
  int max_steps = 2000;
  Tolerances tol;
};

/// Pseudo-arclength predictor along a kernel direction with a Newton corrector in the slice
/// orthogonal to the tangent. Kernel jumps are flagged and tracing continues through them;
/// the branch ends on closure, max_steps, or a corrector failure after one step halving.
/// Throws NotOnManifold when local_dimension is zero.
ManifoldSample trace_curve(const Graph& g, const Coupling& f, const EquilibriumPoint& p0,
                           const TraceOptions& opt = {});

struct SampleOptions {
  double step = 0.05;
  int budget = 400;
  Tolerances tol;
};

/// Breadth-first expansion along all kernel directions with a dedup grid of spacing step.
/// Throws NotOnManifold unless local_dimension >= 2.
ManifoldSample sample_manifold(const Graph& g, const Coupling& f, const EquilibriumPoint& p0,
                               const SampleOptions& opt = {});

/// True when every kernel direction at p leads, after a step h and correction, to equilibria
/// with the same local dimension. Kernel counts at manifold intersections fail this test.
bool is_regular_point(const Graph& g, const Coupling& f, const EquilibriumPoint& p, const Tolerances& tol = {},
                      double h = 1e-3);

/// Newton corrector for F(x) = 0 with t.(x - x_pred) = 0 and zero component means.
std::optional<EquilibriumPoint> correct_in_slice(const Graph& g, const Coupling& f, const Vec& x_pred,
                                                 const Vec& t, const Tolerances& tol, int max_iter = 30);

namespace serial {
ManifoldSample sample_manifold(const Graph& g, const Coupling& f, const EquilibriumPoint& p0,
                               const SampleOptions& opt = {});
}

}  // namespace gdyn
