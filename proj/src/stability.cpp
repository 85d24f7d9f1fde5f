#include "gdyn/stability.hpp"

#include <Eigen/Eigenvalues>

#include "gdyn/errors.hpp"
#include "gdyn/field.hpp"

namespace gdyn {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::LinearlyStableUpToSymmetry: return "LinearlyStableUpToSymmetry";
    case Verdict::StableNormallyHyperbolic: return "StableNormallyHyperbolic";
    case Verdict::Unstable: return "Unstable";
    case Verdict::Degenerate: return "Degenerate";
  }
  return "unknown";
}

std::string StabilityReport::verdict_label() const {
  if (verdict == Verdict::StableNormallyHyperbolic)
    return to_string(verdict) + "(" + std::to_string(normal_dim) + ")";
  return to_string(verdict);
}

StabilityReport classify(const Graph& g, const Coupling& f, const EquilibriumPoint& p,
                         std::optional<int> local_dim, const Tolerances& tol) {
  StabilityReport r;
  const Mat h = hessian(g, f, p.x);
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  r.spectrum = es.eigenvalues();
  const double lmax = r.spectrum.size() ? r.spectrum.cwiseAbs().maxCoeff() : 0.0;
  r.zero_threshold = tol.zero_threshold(lmax);
  for (Eigen::Index i = 0; i < r.spectrum.size(); ++i)
    if (std::abs(r.spectrum(i)) <= r.zero_threshold) ++r.zero_multiplicity;
  r.rank = g.n() - r.zero_multiplicity;

  r.positive_edge_shortcut = g.m() > 0;
  for (int e = 0; e < g.m(); ++e)
    if (!(f.deriv(p.y(e)) > 0.0)) r.positive_edge_shortcut = false;

  const bool negative = r.spectrum.size() && r.spectrum(0) < -r.zero_threshold;
  const int full = g.n() - g.c();
  const int d = local_dim ? *local_dim : r.zero_multiplicity - g.c();
  if (negative) {
    r.verdict = Verdict::Unstable;
    r.rule = "(a) negative Hessian eigenvalue";
  } else if (r.rank == full) {
    r.verdict = Verdict::LinearlyStableUpToSymmetry;
    r.rule = "(b) positive semidefinite with rank n-c";
  } else if (d >= 1 && r.rank == full - d) {
    r.verdict = Verdict::StableNormallyHyperbolic;
    r.normal_dim = d;
    r.rule = local_dim ? "(c) positive semidefinite with rank n-c-d, d = local dimension"
                       : "(c) positive semidefinite with rank n-c-d, d = kernel excess";
  } else {
    r.verdict = Verdict::Degenerate;
    r.rule = "(d) positive semidefinite kernel not explained by translations and tangent space";
  }
  return r;
}

BlockStability block_stability(const Graph& g, const Coupling& f, const Vec& x, const Tolerances& tol) {
  if (!g.connected()) throw Error(ErrorCode::NotConnected, "block stability needs a connected graph");
  BlockStability out;
  out.direct = classify(g, f, make_point(g, f, x), std::nullopt, tol);
  const auto dec = block_decomposition(g);
  bool any_unstable = false, any_degenerate = false;
  out.combined_normal_dim = 0;
  for (const auto& verts : dec.blocks) {
    const Graph sub = g.induced(verts);
    Vec xb(static_cast<Eigen::Index>(verts.size()));
    for (std::size_t i = 0; i < verts.size(); ++i) xb(static_cast<Eigen::Index>(i)) = x(verts[i]);
    const auto pb = make_point(sub, f, xb);
    if (pb.residual > tol.eq_threshold(xb))
      throw Error(ErrorCode::BlockMismatch, "restriction to a block is not an equilibrium (residual " +
                                                std::to_string(pb.residual) + ")");
    BlockReport br{verts, classify(sub, f, pb, std::nullopt, tol), pb.residual};
    any_unstable = any_unstable || br.report.verdict == Verdict::Unstable;
    any_degenerate = any_degenerate || br.report.verdict == Verdict::Degenerate;
    out.combined_normal_dim += br.report.normal_dim;
    out.blocks.push_back(std::move(br));
  }
  if (any_unstable)
    out.combined = Verdict::Unstable;
  else if (any_degenerate)
    out.combined = Verdict::Degenerate;
  else if (out.combined_normal_dim == 0)
    out.combined = Verdict::LinearlyStableUpToSymmetry;
  else
    out.combined = Verdict::StableNormallyHyperbolic;
  if (out.combined != Verdict::StableNormallyHyperbolic) out.combined_normal_dim = 0;
  out.consistent = out.direct.verdict == out.combined;
  return out;
}

namespace {
std::vector<StabilityReport> batch(const Graph& g, const Coupling& f, const std::vector<EquilibriumPoint>& points,
                                   const Tolerances& tol, bool parallel) {
  std::vector<StabilityReport> out(points.size());
  const auto count = static_cast<long>(points.size());
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
  for (long i = 0; i < count; ++i)
    out[static_cast<std::size_t>(i)] = classify(g, f, points[static_cast<std::size_t>(i)], std::nullopt, tol);
  return out;
}
}  // namespace

std::vector<StabilityReport> classify_batch(const Graph& g, const Coupling& f,
                                            const std::vector<EquilibriumPoint>& points, const Tolerances& tol) {
  return batch(g, f, points, tol, true);
}

namespace serial {
std::vector<StabilityReport> classify_batch(const Graph& g, const Coupling& f,
                                            const std::vector<EquilibriumPoint>& points, const Tolerances& tol) {
  return batch(g, f, points, tol, false);
}
}  // namespace serial

}  // namespace gdyn
