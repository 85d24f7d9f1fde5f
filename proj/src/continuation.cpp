#include "gdyn/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "gdyn/errors.hpp"
#include "gdyn/field.hpp"

namespace gdyn {

LocalDimension local_dimension(const Graph& g, const Coupling& f, const EquilibriumPoint& p, const Tolerances& tol) {
  LocalDimension out;
  Eigen::SelfAdjointEigenSolver<Mat> es(hessian(g, f, p.x));
  const Vec& lam = es.eigenvalues();
  const double lmax = lam.size() ? lam.cwiseAbs().maxCoeff() : 0.0;
  const double cut = tol.zero_threshold(lmax);
  std::vector<Eigen::Index> zero_idx;
  double zero_max = 0.0, nonzero_min = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (std::abs(lam(i)) <= cut) {
      zero_idx.push_back(i);
      zero_max = std::max(zero_max, std::abs(lam(i)));
    } else {
      nonzero_min = std::min(nonzero_min, std::abs(lam(i)));
    }
  }
  out.zero_multiplicity = static_cast<int>(zero_idx.size());
  out.spectral_gap = zero_max > 0.0 ? nonzero_min / zero_max : std::numeric_limits<double>::infinity();
  out.d = std::max(0, out.zero_multiplicity - g.c());
  out.kernel_basis = Mat::Zero(g.n(), out.d);
  if (out.d == 0) return out;

  Mat v0(g.n(), static_cast<Eigen::Index>(zero_idx.size()));
  for (std::size_t k = 0; k < zero_idx.size(); ++k) v0.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(zero_idx[k]);
  const Mat dmat = translation_basis(g);
  const Mat w = v0 - dmat * (dmat.transpose() * v0);
  Eigen::JacobiSVD<Mat> svd(w, Eigen::ComputeThinU);
  out.kernel_basis = svd.matrixU().leftCols(out.d);
  return out;
}

namespace {

double edge_norm(const Graph& g, const Vec& v) { return edge_differences(g, v).norm(); }

Vec edge_normalized(const Graph& g, const Vec& v) {
  const double s = edge_norm(g, v);
  return s > 0.0 ? Vec(v / s) : v;
}

double edge_dot(const Graph& g, const Vec& a, const Vec& b) {
  return edge_differences(g, a).dot(edge_differences(g, b));
}

}  // namespace

std::optional<EquilibriumPoint> correct_in_slice(const Graph& g, const Coupling& f, const Vec& x_pred, const Vec& t,
                                                 const Tolerances& tol, int max_iter) {
  const int n = g.n(), c = g.c();
  const Mat dmat = translation_basis(g);
  Vec x = project_out_translations(g, x_pred);
  const Vec anchor = x;
  Mat a(n + 1 + c, n);
  Vec rhs(n + 1 + c);
  auto build = [&](const Vec& xc, const Vec& fx) {
    a.topRows(n) = hessian(g, f, xc);
    a.row(n) = t.transpose();
    a.bottomRows(c) = dmat.transpose();
    rhs.head(n) = fx;
    rhs(n) = -t.dot(xc - anchor);
    rhs.tail(c) = -dmat.transpose() * xc;
  };
  for (int it = 0; it < max_iter; ++it) {
    const Vec fx = vector_field(g, f, x);
    const double r = fx.norm();
    if (r <= tol.eq_threshold(x)) {
      for (int k = 0; k < 3 && r > 0.0; ++k) {
        build(x, vector_field(g, f, x));
        const Vec dx = a.completeOrthogonalDecomposition().solve(rhs);
        const Vec trial = x + dx;
        if (vector_field(g, f, trial).norm() >= vector_field(g, f, x).norm()) break;
        x = trial;
      }
      return make_point(g, f, project_out_translations(g, x));
    }
    build(x, fx);
    Vec dx = a.completeOrthogonalDecomposition().solve(rhs);
    bool moved = false;
    for (int k = 0; k < 12; ++k) {
      const Vec trial = x + dx;
      if (vector_field(g, f, trial).norm() < r) {
        x = trial;
        moved = true;
        break;
      }
      dx *= 0.5;
    }
    if (!moved) return std::nullopt;
  }
  return std::nullopt;
}

namespace {

struct Spectral {
  int negatives = 0;
  double mu = 0.0;  // eigenvalue closest to zero beyond the generic kernel
  int zeros = 0;
};

}  // namespace

bool is_regular_point(const Graph& g, const Coupling& f, const EquilibriumPoint& p, const Tolerances& tol, double h) {
  const auto ld = local_dimension(g, f, p, tol);
  for (Eigen::Index k = 0; k < ld.kernel_basis.cols(); ++k) {
    const Vec v = edge_normalized(g, ld.kernel_basis.col(k));
    for (double s : {h, -h}) {
      const auto q = correct_in_slice(g, f, p.x + s * v, v, tol);
      if (!q || local_dimension(g, f, *q, tol).d != ld.d) return false;
    }
  }
  return true;
}

namespace {

Spectral spectral(const Graph& g, const Coupling& f, const Vec& x, int generic_kernel, const Tolerances& tol) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hessian(g, f, x), Eigen::EigenvaluesOnly);
  Vec lam = es.eigenvalues();
  const double cut = tol.zero_threshold(lam.cwiseAbs().maxCoeff());
  Spectral s;
  std::vector<double> v(lam.begin(), lam.end());
  for (double l : v) {
    if (l < -cut) ++s.negatives;
    if (std::abs(l) <= cut) ++s.zeros;
  }
  std::sort(v.begin(), v.end(), [](double p, double q) { return std::abs(p) < std::abs(q); });
  if (static_cast<std::size_t>(generic_kernel) < v.size()) s.mu = v[static_cast<std::size_t>(generic_kernel)];
  return s;
}

std::optional<EquilibriumPoint> advance(const Graph& g, const Coupling& f, const Vec& x, const Vec& t, double h,
                                        const Tolerances& tol) {
  const Vec pred = x + h * t;
  auto q = correct_in_slice(g, f, pred, t, tol);
  if (!q) return std::nullopt;
  if (edge_norm(g, q->x - pred) > h) return std::nullopt;
  return q;
}

}  // namespace

ManifoldSample trace_curve(const Graph& g, const Coupling& f, const EquilibriumPoint& p0, const TraceOptions& opt) {
  const auto ld0 = local_dimension(g, f, p0, opt.tol);
  if (ld0.d == 0) throw Error(ErrorCode::NotOnManifold, "starting point has local dimension 0");
  if (opt.direction_index < 0 || opt.direction_index >= ld0.d)
    throw Error(ErrorCode::InvalidInput, "direction index outside the kernel");
  if (!(opt.step > 0.0)) throw Error(ErrorCode::InvalidInput, "step must be positive");

  const int generic = g.c() + ld0.d;
  const auto period = f.period();
  ManifoldSample out;
  EquilibriumPoint start = make_point(g, f, p0.canonical);
  out.points.push_back(start);
  out.local_dim.push_back(ld0.d);

  const Vec t0 = edge_normalized(g, Vec(ld0.kernel_basis.col(opt.direction_index)));
  Vec t = t0;
  Vec x = start.x;
  Spectral prev = spectral(g, f, x, generic, opt.tol);
  double mu_before_prev = std::numeric_limits<double>::quiet_NaN();
  out.stop_reason = "max_steps";

  for (int k = 1; k <= opt.max_steps; ++k) {
    double h = opt.step;
    auto q = advance(g, f, x, t, h, opt.tol);
    if (!q) {
      h *= 0.5;
      q = advance(g, f, x, t, h, opt.tol);
    }
    if (!q) {
      const int last = static_cast<int>(out.points.size()) - 1;
      if (out.singular_flags.empty() || out.singular_flags.back() != last) {
        out.singular_flags.push_back(last);
        out.singular_points.push_back(out.points.back());
      }
      out.stop_reason = "corrector_failure";
      break;
    }

    const auto ld = local_dimension(g, f, *q, opt.tol);
    Vec tn;
    if (ld.d >= 1) tn = ld.kernel_basis * (ld.kernel_basis.transpose() * t);
    if (ld.d == 0 || tn.norm() < 0.1 * t.norm()) tn = q->x - x;
    tn = edge_normalized(g, tn);
    if (edge_dot(g, tn, t) < 0.0) tn = -tn;

    out.length += (q->y - edge_differences(g, x)).norm();
    out.points.push_back(*q);
    out.local_dim.push_back(ld.d);
    const int idx = static_cast<int>(out.points.size()) - 1;

    const Spectral now = spectral(g, f, q->x, generic, opt.tol);
    if (now.zeros != generic) {
      out.singular_flags.push_back(idx);
      out.singular_points.push_back(*q);
    } else if (now.negatives != prev.negatives) {
      // eigenvalue crossed zero inside the last step: bisect on arclength
      double lo = 0.0, hi = h;
      std::optional<EquilibriumPoint> best;
      for (int it = 0; it < 50 && hi - lo > 1e-10; ++it) {
        const double mid = 0.5 * (lo + hi);
        auto m = correct_in_slice(g, f, x + mid * t, t, opt.tol);
        if (!m) break;
        best = m;
        if (spectral(g, f, m->x, generic, opt.tol).negatives == prev.negatives)
          lo = mid;
        else
          hi = mid;
      }
      out.singular_flags.push_back(idx);
      out.singular_points.push_back(best ? *best : *q);
    } else if (std::isfinite(mu_before_prev) && std::abs(prev.mu) < std::abs(mu_before_prev) &&
               std::abs(prev.mu) < std::abs(now.mu)) {
      // |mu| has a local minimum near the previous sample: golden-section search around it
      const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
      double a = -h, b = h;
      auto value = [&](double s) -> std::pair<double, std::optional<EquilibriumPoint>> {
        auto m = correct_in_slice(g, f, x + s * t, t, opt.tol);
        if (!m) return {std::numeric_limits<double>::infinity(), std::nullopt};
        return {std::abs(spectral(g, f, m->x, generic, opt.tol).mu), m};
      };
      double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
      auto v1 = value(c1), v2 = value(c2);
      for (int it = 0; it < 60 && b - a > 1e-9; ++it) {
        if (v1.first < v2.first) {
          b = c2;
          c2 = c1;
          v2 = v1;
          c1 = b - gr * (b - a);
          v1 = value(c1);
        } else {
          a = c1;
          c1 = c2;
          v1 = v2;
          c2 = a + gr * (b - a);
          v2 = value(c2);
        }
      }
      const auto& best = v1.first < v2.first ? v1 : v2;
      if (best.second) {
        const Spectral sb = spectral(g, f, best.second->x, generic, opt.tol);
        if (sb.zeros > generic) {
          out.singular_flags.push_back(idx - 1);
          out.singular_points.push_back(*best.second);
        }
      }
    }
    mu_before_prev = prev.mu;
    prev = now;

    x = q->x;
    t = tn;
    if (out.length > 3.0 * opt.step) {
      const double dist = equivalence_distance(q->y, start.y, period);
      if (dist < 0.5 * opt.step && edge_dot(g, t, t0) > 0.0) {
        out.closed = true;
        out.length += dist;
        out.stop_reason = "closed";
        break;
      }
    }
  }
  // one flag per singular location
  std::vector<int> flags;
  std::vector<EquilibriumPoint> sing;
  for (std::size_t i = 0; i < out.singular_flags.size(); ++i) {
    const auto& sp = out.singular_points[i];
    const bool dup = std::any_of(sing.begin(), sing.end(), [&](const EquilibriumPoint& q) {
      return equivalence_distance(q.y, sp.y, period) <= 1e-6;
    });
    if (dup) continue;
    flags.push_back(out.singular_flags[i]);
    sing.push_back(sp);
  }
  out.singular_flags = std::move(flags);
  out.singular_points = std::move(sing);
  return out;
}

namespace {

std::vector<long> grid_key(const Vec& y, double step, std::optional<double> period) {
  std::vector<long> key(static_cast<std::size_t>(y.size()));
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    double v = y(i);
    if (period) v -= *period * std::floor(v / *period + 0.5);
    key[static_cast<std::size_t>(i)] = std::lround(v / step);
  }
  return key;
}

ManifoldSample sample_impl(const Graph& g, const Coupling& f, const EquilibriumPoint& p0, const SampleOptions& opt,
                           bool parallel) {
  const auto ld0 = local_dimension(g, f, p0, opt.tol);
  if (ld0.d < 2)
    throw Error(ErrorCode::NotOnManifold,
                "sample_manifold needs local dimension >= 2, found " + std::to_string(ld0.d));
  if (!(opt.step > 0.0) || opt.budget < 1) throw Error(ErrorCode::InvalidInput, "step > 0 and budget >= 1 required");
  const auto period = f.period();

  ManifoldSample out;
  std::vector<Mat> kernels;
  std::set<std::vector<long>> occupied;
  auto start = make_point(g, f, p0.canonical);
  occupied.insert(grid_key(start.y, opt.step, period));
  out.points.push_back(start);
  out.local_dim.push_back(ld0.d);
  kernels.push_back(ld0.kernel_basis);

  std::vector<int> frontier{0};
  while (!frontier.empty() && static_cast<int>(out.points.size()) < opt.budget) {
    std::vector<std::pair<int, int>> tasks;  // (point, signed direction)
    for (int p : frontier) {
      const int d = static_cast<int>(kernels[static_cast<std::size_t>(p)].cols());
      for (int j = 0; j < 2 * d; ++j) tasks.emplace_back(p, j);
    }
    std::vector<std::optional<EquilibriumPoint>> cand(tasks.size());
    std::vector<LocalDimension> cand_ld(tasks.size());
    const auto count = static_cast<long>(tasks.size());
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
    for (long i = 0; i < count; ++i) {
      const auto [p, j] = tasks[static_cast<std::size_t>(i)];
      const Mat& k = kernels[static_cast<std::size_t>(p)];
      Vec t = edge_normalized(g, Vec(k.col(j / 2)));
      if (j % 2) t = -t;
      auto q = advance(g, f, out.points[static_cast<std::size_t>(p)].x, t, opt.step, opt.tol);
      if (q) {
        cand_ld[static_cast<std::size_t>(i)] = local_dimension(g, f, *q, opt.tol);
        cand[static_cast<std::size_t>(i)] = std::move(q);
      }
    }
    std::vector<int> next;
    for (std::size_t i = 0; i < cand.size() && static_cast<int>(out.points.size()) < opt.budget; ++i) {
      if (!cand[i]) continue;
      auto key = grid_key(cand[i]->y, opt.step, period);
      if (!occupied.insert(std::move(key)).second) continue;
      out.points.push_back(*cand[i]);
      out.local_dim.push_back(cand_ld[i].d);
      kernels.push_back(cand_ld[i].kernel_basis);
      const int idx = static_cast<int>(out.points.size()) - 1;
      if (cand_ld[i].d != ld0.d) {
        out.singular_flags.push_back(idx);
        out.singular_points.push_back(*cand[i]);
      }
      if (cand_ld[i].d >= 1) next.push_back(idx);
    }
    frontier = std::move(next);
  }
  out.stop_reason = frontier.empty() ? "frontier_exhausted" : "budget";
  return out;
}

}  // namespace

ManifoldSample sample_manifold(const Graph& g, const Coupling& f, const EquilibriumPoint& p0, const SampleOptions& opt) {
  return sample_impl(g, f, p0, opt, true);
}

namespace serial {
ManifoldSample sample_manifold(const Graph& g, const Coupling& f, const EquilibriumPoint& p0, const SampleOptions& opt) {
  return sample_impl(g, f, p0, opt, false);
}
}  // namespace serial

}  // namespace gdyn
