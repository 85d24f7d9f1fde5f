#include "doctest.h"

#include <numbers>
#include <random>

#include "gdyn/corpus.hpp"
#include "gdyn/errors.hpp"
#include "gdyn/field.hpp"
#include "gdyn/generators.hpp"
#include "gdyn/simulator.hpp"
#include "gdyn/stability.hpp"

using namespace gdyn;
constexpr double kPi = std::numbers::pi;

namespace {
const Coupling& sine() {
  static const Coupling f = Coupling::sine_sum({{1, 1.0}});
  return f;
}
}  // namespace

TEST_CASE("stationary start") {
  const auto k4 = graphs::complete(4);
  const auto tr = integrate(k4, sine(), constructions::k4_curve_state(0.7));
  CHECK(tr.converged_to.has_value());
  CHECK(tr.conserved_drift == 0.0);
  CHECK_THROWS_AS(integrate(k4, sine(), Vec::Zero(3)), Error);
  IntegrateOptions bad;
  bad.t_end = 0.0;
  CHECK_THROWS_AS(integrate(k4, sine(), Vec::Zero(4), bad), Error);
}

TEST_CASE("increasing coupling converges to consensus") {
  const auto f = Coupling::odd_polynomial({1.0, 1.0});
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int t = 0; t < 5; ++t) {
    const auto g = graphs::random_connected(6, 3, rng());
    Vec x0(g.n());
    for (int i = 0; i < g.n(); ++i) x0(i) = u(rng);
    const auto tr = integrate(g, f, x0);
    REQUIRE(tr.converged_to.has_value());
    CHECK(tr.converged_to->canonical.lpNorm<Eigen::Infinity>() <= 1e-6);
    CHECK(vector_field(g, f, tr.converged_to->x).norm() < Tolerances{}.eq_threshold(tr.converged_to->x));
    CHECK(std::abs(tr.converged_to->x.sum() - x0.sum()) <= 1e-8 * 200 * x0.lpNorm<Eigen::Infinity>());
  }
}

TEST_CASE("sine on K4: energy decreases and the endpoint is not unstable") {
  const auto k4 = graphs::complete(4);
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int t = 0; t < 5; ++t) {
    Vec x0(4);
    for (int i = 0; i < 4; ++i) x0(i) = u(rng);
    const auto tr = integrate(k4, sine(), x0);
    for (std::size_t k = 1; k < tr.energy_series.size(); ++k)
      CHECK(tr.energy_series[k] - tr.energy_series[k - 1] <= tr.monotonicity_threshold);
    REQUIRE(tr.converged_to.has_value());
    CHECK(classify(k4, sine(), *tr.converged_to).verdict != Verdict::Unstable);
  }
}

TEST_CASE("basin sampling") {
  const auto p3 = graphs::path(3);
  BasinOptions o;
  o.trials = 10;
  const auto r = basin_sample(p3, sine(), make_point(p3, sine(), Vec::Zero(3)), o);
  CHECK(r.label == "empirical evidence");
  CHECK(r.returned_fraction == 1.0);
  CHECK(r.max_excursion < 0.2);

  const auto k4 = graphs::complete(4);
  BasinOptions u;
  u.trials = 6;
  const auto ru = basin_sample(k4, sine(), make_point(k4, sine(), constructions::k4_curve_state(0.7)), u);
  CHECK(ru.max_excursion > 10 * u.radius);

  const auto k5 = graphs::complete(5);
  const auto anti = Coupling::sine_sum({{1, -1.0}});
  BasinOptions m;
  m.trials = 6;
  const auto pm = make_point(k5, anti, constructions::balanced_angles(5, 99));
  const auto rm = basin_sample(k5, anti, pm, m);
  CHECK(rm.returned_fraction == 1.0);
  CHECK(rm.max_normal_excursion <= 2 * m.radius);
  CHECK(rm.max_tangential_drift > 0.0);

  const auto sm = serial::basin_sample(k5, anti, pm, m);
  CHECK(sm.returned_fraction == rm.returned_fraction);
  CHECK(sm.max_excursion == rm.max_excursion);
}
