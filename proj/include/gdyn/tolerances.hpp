#pragma once

#include <algorithm>
#include <limits>
#include <optional>

#include "gdyn/types.hpp"

namespace gdyn {

/// Numerical thresholds shared by the solvers and the classifiers.
struct Tolerances {
  /// Equilibrium acceptance: ||F(x)||_2 <= eq * (1 + ||x||_inf).
  double eq = 1e-9;
  /// Zero-eigenvalue bucket: |lambda| <= zero * max(1, |lambda|_max).
  double zero = 1e-7;
  /// Absolute override of the singular-value cutoff used for numerical rank.
  std::optional<double> rank;

  double eq_threshold(const Vec& x) const {
    return eq * (1.0 + (x.size() ? x.lpNorm<Eigen::Infinity>() : 0.0));
  }

  double zero_threshold(double max_abs_eigenvalue) const {
    return zero * std::max(1.0, max_abs_eigenvalue);
  }

  double rank_threshold(Eigen::Index rows, Eigen::Index cols, double sigma_max) const {
    if (rank) return *rank;
    return static_cast<double>(std::max(rows, cols)) * std::numeric_limits<double>::epsilon() *
           sigma_max;
  }
};

}  // namespace gdyn
