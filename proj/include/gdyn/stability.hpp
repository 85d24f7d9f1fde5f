#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gdyn/coupling.hpp"
#include "gdyn/equilibria.hpp"
#include "gdyn/graph.hpp"
#include "gdyn/tolerances.hpp"

namespace gdyn {

enum class Verdict { LinearlyStableUpToSymmetry, StableNormallyHyperbolic, Unstable, Degenerate };
std::string to_string(Verdict v);

struct StabilityReport {
  Vec spectrum;  // ascending
  int rank = 0;
  int zero_multiplicity = 0;
  Verdict verdict = Verdict::Degenerate;
  int normal_dim = 0;  // d of StableNormallyHyperbolic(d)
  std::string rule;
  double zero_threshold = 0.0;
  /// f' > 0 on every edge, which alone forces linear stability up to symmetry.
  bool positive_edge_shortcut = false;

  /// "StableNormallyHyperbolic(2)" and so on.
  std::string verdict_label() const;
};

/// Rules in order: (a) eigenvalue < -T_zero gives Unstable; (b) PSD of rank n-c gives
/// LinearlyStableUpToSymmetry; (c) PSD of rank n-c-d gives StableNormallyHyperbolic(d), where
/// d = local_dim when supplied and the kernel excess zero_multiplicity - c otherwise;
/// (d) Degenerate.
StabilityReport classify(const Graph& g, const Coupling& f, const EquilibriumPoint& p,
                         std::optional<int> local_dim = std::nullopt, const Tolerances& tol = {});

struct BlockReport {
  std::vector<int> vertices;
  StabilityReport report;
  double residual = 0.0;
};

struct BlockStability {
  std::vector<BlockReport> blocks;
  Verdict combined = Verdict::Degenerate;
  int combined_normal_dim = 0;
  StabilityReport direct;
  bool consistent = false;  // direct verdict class equals the combined one
};

/// Throws NotConnected, BlockMismatch.
BlockStability block_stability(const Graph& g, const Coupling& f, const Vec& x, const Tolerances& tol = {});

std::vector<StabilityReport> classify_batch(const Graph& g, const Coupling& f,
                                            const std::vector<EquilibriumPoint>& points,
                                            const Tolerances& tol = {});

namespace serial {
std::vector<StabilityReport> classify_batch(const Graph& g, const Coupling& f,
                                            const std::vector<EquilibriumPoint>& points,
                                            const Tolerances& tol = {});
}

}  // namespace gdyn
