#include "gdyn/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "gdyn/errors.hpp"
#include "gdyn/field.hpp"
#include "gdyn/homology.hpp"
#include "gdyn/parallel.hpp"

namespace gdyn {

EquilibriumPoint make_point(const Graph& g, const Coupling& f, const Vec& x) {
  EquilibriumPoint p;
  p.x = x;
  p.y = edge_differences(g, x);
  p.residual = vector_field(g, f, x).norm();
  p.canonical = project_out_translations(g, x);
  return p;
}

namespace {

struct Step {
  Vec dx;
  bool ok;
};

Vec pinv_apply(const Mat& h, const Vec& rhs, const Tolerances& tol) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  const Vec& lam = es.eigenvalues();
  const double lmax = lam.cwiseAbs().maxCoeff();
  const double cut = tol.rank_threshold(h.rows(), h.cols(), lmax);
  Vec coeff = es.eigenvectors().transpose() * rhs;
  for (Eigen::Index i = 0; i < lam.size(); ++i) coeff(i) = std::abs(lam(i)) > cut ? coeff(i) / lam(i) : 0.0;
  return es.eigenvectors() * coeff;
}

Vec cap_step(Vec dx, double cap) {
  const double s = dx.lpNorm<Eigen::Infinity>();
  if (s > cap) dx *= cap / s;
  return dx;
}

// Backtracking on ||F||^2 along dx; returns the accepted point or nullopt.
std::optional<Vec> line_search(const Graph& g, const Coupling& f, const Vec& x, const Vec& dx, double phi0) {
  double alpha = 1.0;
  for (int k = 0; k < 40; ++k) {
    Vec trial = x + alpha * dx;
    const double phi = vector_field(g, f, trial).squaredNorm();
    if (phi <= (1.0 - 1e-4 * alpha) * phi0) return trial;
    alpha *= 0.5;
  }
  return std::nullopt;
}

}  // namespace

EquilibriumPoint newton_solve(const Graph& g, const Coupling& f, const Vec& x0, const NewtonOptions& opt) {
  if (x0.size() != g.n() || !x0.allFinite())
    throw Error(ErrorCode::InvalidInput, "newton_solve: x0 must be finite with length n");
  Vec x = project_out_translations(g, x0);
  for (int it = 0; it <= opt.max_iter; ++it) {
    const Vec F = vector_field(g, f, x);
    const double phi0 = F.squaredNorm();
    if (std::sqrt(phi0) <= opt.tol.eq_threshold(x)) {
      // polish while the residual keeps dropping
      for (int k = 0; k < 5 && phi0 > 0.0; ++k) {
        Vec trial = project_out_translations(g, x + pinv_apply(hessian(g, f, x), vector_field(g, f, x), opt.tol));
        if (vector_field(g, f, trial).squaredNorm() >= vector_field(g, f, x).squaredNorm()) break;
        x = trial;
      }
      return make_point(g, f, x);
    }
    if (it == opt.max_iter) break;
    const Mat h = hessian(g, f, x);
    auto next = line_search(g, f, x, cap_step(pinv_apply(h, F, opt.tol), opt.max_step), phi0);
    if (!next) {
      // gradient of 0.5 ||F||^2 is -H F
      const Vec d = h * F;
      const Vec hd = h * d;
      const double scale = hd.squaredNorm() > 0.0 ? d.squaredNorm() / hd.squaredNorm() : 1.0;
      next = line_search(g, f, x, cap_step(scale * d, opt.max_step), phi0);
    }
    if (!next) break;
    x = project_out_translations(g, *next);
  }
  throw Error(ErrorCode::NoConvergence,
              "Newton did not reach the residual threshold within " + std::to_string(opt.max_iter) + " iterations");
}

double equivalence_distance(const Vec& y, const Vec& y2, std::optional<double> period) {
  Vec d = y - y2;
  if (period) {
    const double t = *period;
    for (Eigen::Index i = 0; i < d.size(); ++i) d(i) -= t * std::round(d(i) / t);
  }
  return d.norm();
}

EquilibriumAtlas assemble_atlas(std::vector<EquilibriumPoint> found, std::optional<double> period,
                                double dedup_distance) {
  std::sort(found.begin(), found.end(), [](const EquilibriumPoint& a, const EquilibriumPoint& b) {
    if (a.residual != b.residual) return a.residual < b.residual;
    return std::lexicographical_compare(a.canonical.begin(), a.canonical.end(), b.canonical.begin(),
                                        b.canonical.end());
  });
  EquilibriumAtlas atlas;
  atlas.dedup_distance = dedup_distance;
  atlas.period = period;
  for (auto& p : found) {
    const bool dup = std::any_of(atlas.points.begin(), atlas.points.end(), [&](const EquilibriumPoint& q) {
      return equivalence_distance(p.y, q.y, period) <= dedup_distance;
    });
    if (!dup) atlas.points.push_back(std::move(p));
  }
  return atlas;
}

namespace {

EquilibriumAtlas atlas_impl(const Graph& g, const Coupling& f, const AtlasOptions& opt, bool parallel) {
  if (opt.starts < 1) throw Error(ErrorCode::InvalidInput, "multistart needs at least one start");
  std::vector<std::optional<EquilibriumPoint>> results(static_cast<std::size_t>(opt.starts));
#pragma omp parallel for schedule(dynamic, 4) if (parallel)
  for (int s = 0; s < opt.starts; ++s) {
    std::mt19937_64 rng(task_seed(opt.seed, static_cast<std::uint64_t>(s)));
    std::uniform_real_distribution<double> u(-opt.box_radius, opt.box_radius);
    Vec x0(g.n());
    for (int i = 0; i < g.n(); ++i) x0(i) = u(rng);
    try {
      results[static_cast<std::size_t>(s)] = newton_solve(g, f, x0, opt.newton);
    } catch (const Error&) {
    }
  }
  std::vector<EquilibriumPoint> found;
  int failures = 0;
  for (auto& r : results) {
    if (r)
      found.push_back(std::move(*r));
    else
      ++failures;
  }
  auto atlas = assemble_atlas(std::move(found), f.period(), opt.dedup_distance);
  atlas.failures = failures;
  return atlas;
}

}  // namespace

EquilibriumAtlas multistart_atlas(const Graph& g, const Coupling& f, const AtlasOptions& opt) {
  return atlas_impl(g, f, opt, true);
}

namespace serial {
EquilibriumAtlas multistart_atlas(const Graph& g, const Coupling& f, const AtlasOptions& opt) {
  return atlas_impl(g, f, opt, false);
}
}  // namespace serial

std::vector<EquilibriumPoint> zero_pattern_equilibria(const Graph& g, const Coupling& f, double z) {
  if (z == 0.0 || !std::isfinite(z) || std::abs(f(z)) > kRootTolerance)
    throw Error(ErrorCode::NotARoot, "z must be a nonzero root of f");
  if (!g.connected()) throw Error(ErrorCode::NotConnected, "zero patterns need a connected graph");
  if (g.n() > 20) throw Error(ErrorCode::GraphTooLarge, "zero patterns are enumerated for n <= 20");
  std::vector<EquilibriumPoint> out;
  if (g.n() == 0) return out;
  const std::uint32_t count = std::uint32_t{1} << (g.n() - 1);
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    Vec x = Vec::Zero(g.n());
    for (int i = 1; i < g.n(); ++i)
      if ((mask >> (i - 1)) & 1U) x(i) = z;
    out.push_back(make_point(g, f, x));
  }
  return out;
}

MembershipReport membership_tests(const Graph& g, const Coupling& f, const EquilibriumPoint& p,
                                  const Tolerances& tol) {
  MembershipReport r;
  const Vec fy = apply_coupling(f, p.y);
  r.skew_norm = std::abs(p.y.dot(fy));
  const auto basis = cycle_basis(g);
  if (basis.empty()) {
    r.cycle_distance = fy.norm();
    r.cut_distance = 0.0;
  } else {
    Mat c(g.m(), static_cast<Eigen::Index>(basis.size()));
    for (std::size_t k = 0; k < basis.size(); ++k)
      for (int e = 0; e < g.m(); ++e) c(e, static_cast<Eigen::Index>(k)) = basis[k].coords[static_cast<std::size_t>(e)];
    Eigen::HouseholderQR<Mat> qr(c);
    const Mat q = qr.householderQ() * Mat::Identity(g.m(), c.cols());
    r.cycle_distance = (fy - q * (q.transpose() * fy)).norm();
    r.cut_distance = (q * (q.transpose() * p.y)).norm();
  }
  r.threshold = 10.0 * tol.eq_threshold(p.x);
  return r;
}

std::string to_string(EquilibriaClass c) {
  switch (c) {
    case EquilibriaClass::OnlyZero: return "OnlyZero";
    case EquilibriaClass::Discrete: return "Discrete";
    case EquilibriaClass::NoConclusion: return "NoConclusion";
  }
  return "unknown";
}

EquilibriaPrediction predict_equilibria_class(const Graph& g, const Coupling& f) {
  if (g.m() == 0) throw Error(ErrorCode::InvalidInput, "prediction needs at least one edge");
  EquilibriaPrediction p;
  p.discrete = f.sign_on_positives() != SignOnPositives::Mixed;
  p.global_convergence = f.increasing();
  if (f.positive_zeros().empty())
    p.cls = EquilibriaClass::OnlyZero;
  else if (p.discrete)
    p.cls = EquilibriaClass::Discrete;
  return p;
}

}  // namespace gdyn
