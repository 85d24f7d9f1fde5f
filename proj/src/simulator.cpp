#include "gdyn/simulator.hpp"

#include <cmath>
#include <random>

#include <Eigen/QR>
#include <boost/numeric/odeint.hpp>

#include "gdyn/continuation.hpp"
#include "gdyn/errors.hpp"
#include "gdyn/field.hpp"
#include "gdyn/parallel.hpp"

namespace gdyn {

namespace odeint = boost::numeric::odeint;
using State = std::vector<double>;

namespace {

Vec to_vec(const State& s) { return Eigen::Map<const Vec>(s.data(), static_cast<Eigen::Index>(s.size())); }

std::vector<double> component_sums(const Graph& g, const Vec& x) {
  std::vector<double> s(static_cast<std::size_t>(g.c()), 0.0);
  for (int v = 0; v < g.n(); ++v) s[static_cast<std::size_t>(g.component_of(v))] += x(v);
  return s;
}

}  // namespace

namespace {
constexpr double kSettleFactor = 1e3;
constexpr double kSettleDistance = 1e-6;
}  // namespace

Trajectory integrate(const Graph& g, const Coupling& f, const Vec& x0, const IntegrateOptions& opt) {
  if (!(opt.t_end > 0.0)) throw Error(ErrorCode::InvalidInput, "t_end must be positive");
  if (x0.size() != g.n() || !x0.allFinite()) throw Error(ErrorCode::InvalidInput, "x0 must be finite with length n");

  auto rhs = [&](const State& x, State& dx, double) {
    const Vec F = vector_field(g, f, to_vec(x));
    dx.assign(F.data(), F.data() + F.size());
  };
  auto stepper = odeint::make_controlled(opt.atol, opt.rtol, odeint::runge_kutta_dopri5<State>());

  Trajectory tr;
  State x(x0.data(), x0.data() + x0.size());
  double t = 0.0, dt = opt.initial_step;
  const auto sums0 = component_sums(g, x0);
  const double e0 = energy(g, f, x0);
  tr.monotonicity_threshold = 1e-7 * (1.0 + std::abs(e0));
  tr.times.push_back(0.0);
  tr.states.push_back(x0);
  tr.energy_series.push_back(e0);

  auto check_converged = [&](const Vec& xv) {
    if (!opt.stop_on_convergence) return false;
    return vector_field(g, f, xv).norm() < opt.tol.eq_threshold(xv);
  };

  if (check_converged(x0)) {
    tr.converged_to = make_point(g, f, x0);
    return tr;
  }
  while (t < opt.t_end) {
    dt = std::min(dt, opt.t_end - t);
    const auto result = stepper.try_step(rhs, x, t, dt);
    if (result == odeint::fail) {
      if (dt < opt.min_step)
        throw Error(ErrorCode::StepUnderflow, "step size fell below " + std::to_string(opt.min_step) +
                                                  " at t = " + std::to_string(t));
      continue;
    }
    const Vec xv = to_vec(x);
    const double e = energy(g, f, xv);
    const double rise = e - tr.energy_series.back();
    tr.max_energy_increase = std::max(tr.max_energy_increase, rise);
    if (rise > tr.monotonicity_threshold)
      throw Error(ErrorCode::MonotonicityViolation,
                  "energy rose by " + std::to_string(rise) + " at t = " + std::to_string(t));
    const auto sums = component_sums(g, xv);
    for (std::size_t k = 0; k < sums.size(); ++k)
      tr.conserved_drift = std::max(tr.conserved_drift, std::abs(sums[k] - sums0[k]));
    tr.times.push_back(t);
    tr.states.push_back(xv);
    tr.energy_series.push_back(e);
    const double residual = vector_field(g, f, xv).norm();
    if (opt.stop_on_convergence && residual < kSettleFactor * opt.tol.eq_threshold(xv)) {
      NewtonOptions nopt;
      nopt.tol = opt.tol;
      std::optional<EquilibriumPoint> polished;
      try {
        polished = newton_solve(g, f, xv, nopt);
      } catch (const Error&) {
      }
      const bool close = polished && edge_differences(g, polished->x - xv).norm() <= kSettleDistance;
      if (residual < opt.tol.eq_threshold(xv) || close) {
        if (close) {
          // restore the conserved component means of the trajectory
          Vec shifted = polished->x + (xv - project_out_translations(g, xv));
          tr.converged_to = make_point(g, f, shifted);
        } else {
          tr.converged_to = make_point(g, f, xv);
        }
        break;
      }
    }
  }
  return tr;
}

namespace {

BasinReport basin_impl(const Graph& g, const Coupling& f, const EquilibriumPoint& p, const BasinOptions& opt,
                       bool parallel) {
  if (opt.trials < 1 || !(opt.radius > 0.0)) throw Error(ErrorCode::InvalidInput, "trials >= 1 and radius > 0");
  const auto period = f.period();
  const auto ld = local_dimension(g, f, p, opt.integrate.tol);
  Mat q;  // orthonormal edge-space tangent basis of the component at p
  if (ld.d > 0) {
    Mat yt(g.m(), ld.d);
    for (int j = 0; j < ld.d; ++j) yt.col(j) = edge_differences(g, Vec(ld.kernel_basis.col(j)));
    Eigen::HouseholderQR<Mat> qr(yt);
    q = qr.householderQ() * Mat::Identity(g.m(), ld.d);
  }
  auto wrapped = [&](const Vec& y) {
    Vec d = y - p.y;
    if (period)
      for (Eigen::Index i = 0; i < d.size(); ++i) d(i) -= *period * std::round(d(i) / *period);
    return d;
  };
  auto normal_part = [&](const Vec& d) { return ld.d > 0 ? Vec(d - q * (q.transpose() * d)) : d; };

  struct Trial {
    bool converged = false;
    double excursion = 0.0, normal_excursion = 0.0, final_normal = 0.0, tangential = 0.0;
  };
  std::vector<Trial> res(static_cast<std::size_t>(opt.trials));
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (int s = 0; s < opt.trials; ++s) {
    std::mt19937_64 rng(task_seed(opt.seed, static_cast<std::uint64_t>(s)));
    std::normal_distribution<double> nd;
    Vec v(g.n());
    for (int i = 0; i < g.n(); ++i) v(i) = nd(rng);
    v = project_out_translations(g, v);
    const double s_norm = edge_differences(g, v).norm();
    if (s_norm > 0.0) v *= opt.radius / s_norm;
    Trial tr;
    try {
      const auto traj = integrate(g, f, p.x + v, opt.integrate);
      for (const auto& xs : traj.states) {
        const Vec d = wrapped(edge_differences(g, xs));
        tr.excursion = std::max(tr.excursion, d.norm());
        tr.normal_excursion = std::max(tr.normal_excursion, normal_part(d).norm());
      }
      const Vec dend = wrapped(edge_differences(g, traj.states.back()));
      tr.final_normal = normal_part(dend).norm();
      tr.tangential = (dend - normal_part(dend)).norm();
      tr.converged = traj.converged_to.has_value();
    } catch (const Error&) {
      tr.final_normal = std::numeric_limits<double>::infinity();
    }
    res[static_cast<std::size_t>(s)] = tr;
  }

  BasinReport r;
  r.trials = opt.trials;
  int returned = 0;
  for (const auto& tr : res) {
    r.converged += tr.converged ? 1 : 0;
    if (tr.final_normal <= 0.5 * opt.radius) ++returned;
    r.max_excursion = std::max(r.max_excursion, tr.excursion);
    r.max_normal_excursion = std::max(r.max_normal_excursion, tr.normal_excursion);
    r.max_tangential_drift = std::max(r.max_tangential_drift, tr.tangential);
  }
  r.returned_fraction = static_cast<double>(returned) / opt.trials;
  return r;
}

}  // namespace

BasinReport basin_sample(const Graph& g, const Coupling& f, const EquilibriumPoint& p, const BasinOptions& opt) {
  return basin_impl(g, f, p, opt, true);
}

namespace serial {
BasinReport basin_sample(const Graph& g, const Coupling& f, const EquilibriumPoint& p, const BasinOptions& opt) {
  return basin_impl(g, f, p, opt, false);
}
}  // namespace serial

}  // namespace gdyn
