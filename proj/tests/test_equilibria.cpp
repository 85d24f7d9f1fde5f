#include "doctest.h"

#include <complex>
#include <numbers>
#include <random>

#include "gdyn/corpus.hpp"
#include "gdyn/equilibria.hpp"
#include "gdyn/errors.hpp"
#include "gdyn/field.hpp"
#include "gdyn/generators.hpp"
#include "oracles.hpp"

using namespace gdyn;
constexpr double kPi = std::numbers::pi;

namespace {
const Coupling& sine() {
  static const Coupling f = Coupling::sine_sum({{1, 1.0}});
  return f;
}
ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidInput;
}
}  // namespace

TEST_CASE("vector field") {
  const auto e = graphs::path(2);
  Vec x(2);
  x << 0, kPi / 2;
  const Vec F = vector_field(e, sine(), x);
  CHECK(F(0) == doctest::Approx(1.0));
  CHECK(F(1) == doctest::Approx(-1.0));
  CHECK(vector_field(graphs::complete(5), sine(), Vec::Zero(5)).norm() == 0.0);

  std::mt19937_64 rng(1);
  std::normal_distribution<double> z;
  for (int t = 0; t < 100; ++t) {
    const auto g = graphs::random_connected(3 + static_cast<int>(rng() % 7), static_cast<int>(rng() % 5), rng());
    Vec xr(g.n());
    for (int i = 0; i < g.n(); ++i) xr(i) = 2 * z(rng);
    const Vec Fr = vector_field(g, sine(), xr);
    CHECK(std::abs(Fr.sum()) < 1e-12);
    CHECK((Fr - oracle::direct_field(g, sine(), xr)).norm() < 1e-12);
    CHECK((vector_field(g, sine(), (xr.array() + 0.7).matrix()) - Fr).norm() < 1e-12);
  }
}

TEST_CASE("energy") {
  CHECK(energy(graphs::complete(4), sine(), Vec::Zero(4)) == 0.0);
  const auto kn = graphs::complete(6);
  const auto anti = Coupling::sine_sum({{1, -1.0}});
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int t = 0; t < 20; ++t) {
    Vec x(6);
    std::complex<double> s = 0;
    for (int i = 0; i < 6; ++i) {
      x(i) = u(rng);
      s += std::polar(1.0, x(i));
    }
    CHECK(energy(kn, anti, x) - energy(kn, anti, Vec::Zero(6)) == doctest::Approx(0.5 * std::norm(s) - 18.0));
  }
}

TEST_CASE("newton") {
  const auto k4 = graphs::complete(4);
  CHECK(newton_solve(k4, sine(), Vec::Zero(4)).x == Vec::Zero(4));
  Vec x0(4);
  x0 << 0.02, kPi / 2 - 0.03, kPi + 0.01, 3 * kPi / 2;
  const auto p = newton_solve(k4, sine(), x0);
  CHECK(p.residual < 1e-10);
  CHECK(membership_tests(k4, sine(), p).passes());

  const auto e = graphs::path(2);
  const auto cubic = Coupling::odd_polynomial({-1.0, 1.0});
  Vec x1(2);
  x1 << 0, 0.9;
  const auto q = newton_solve(e, cubic, x1);
  CHECK(q.canonical(0) == doctest::Approx(-0.5));
  CHECK(q.canonical(1) == doctest::Approx(0.5));

  Vec bad(4);
  bad << 0, std::nan(""), 0, 0;
  CHECK(code_of([&] { newton_solve(k4, sine(), bad); }) == ErrorCode::InvalidInput);
}

TEST_CASE("multistart atlas") {
  const auto tree = graphs::glue(graphs::path(3), 1, graphs::star(2), 0);
  AtlasOptions o;
  o.starts = 100;
  const auto a = multistart_atlas(tree, sine(), o);
  const auto zp = zero_pattern_equilibria(tree, sine(), kPi);
  for (const auto& p : a.points) {
    bool found = false;
    for (const auto& z : zp) found = found || equivalence_distance(z.y, p.y, sine().period()) <= 1e-6;
    CHECK(found);
  }
  for (std::size_t i = 0; i < a.points.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) CHECK(equivalence_distance(a.points[i].y, a.points[j].y, a.period) > 1e-6);

  const auto k4 = graphs::complete(4);
  o.starts = 300;
  const auto par = multistart_atlas(k4, sine(), o);
  const auto ser = serial::multistart_atlas(k4, sine(), o);
  REQUIRE(par.points.size() == ser.points.size());
  for (std::size_t i = 0; i < par.points.size(); ++i) CHECK(par.points[i].x == ser.points[i].x);
  for (const auto& p : par.points) CHECK(membership_tests(k4, sine(), p).passes());
}

TEST_CASE("wrapped equivalence") {
  Vec y(3), y2(3);
  y << 0.1, 0.2, -0.3;
  y2 << 0.1 + 2 * kPi, 0.2, -0.3 - 2 * kPi;
  CHECK(equivalence_distance(y, y2, 2 * kPi) < 1e-12);
  CHECK(equivalence_distance(y, y2, std::nullopt) > 1.0);
}

TEST_CASE("zero patterns") {
  CHECK(zero_pattern_equilibria(graphs::path(3), sine(), kPi).size() == 4);
  const auto k3 = zero_pattern_equilibria(graphs::cycle(3), Coupling::odd_polynomial({-1.0, 1.0}), 1.0);
  CHECK(k3.size() == 4);
  for (const auto& p : k3) CHECK(p.residual <= 1e-12);
  const auto inc = Coupling::odd_polynomial({1.0, 1.0});
  CHECK(code_of([&] { zero_pattern_equilibria(graphs::path(3), inc, 1.0); }) == ErrorCode::NotARoot);
  CHECK(code_of([&] { zero_pattern_equilibria(graphs::path(3), sine(), 0.0); }) == ErrorCode::NotARoot);
  const std::vector<std::pair<int, int>> two{{0, 1}, {2, 3}};
  CHECK(code_of([&] { zero_pattern_equilibria(build_graph(two), sine(), kPi); }) == ErrorCode::NotConnected);
  CHECK(code_of([&] { zero_pattern_equilibria(graphs::path(21), sine(), kPi); }) == ErrorCode::GraphTooLarge);
}

TEST_CASE("membership") {
  const auto c3 = graphs::cycle(3);
  const auto cubic = Coupling::odd_polynomial({-1.0, 1.0});
  const auto z = membership_tests(c3, cubic, make_point(c3, cubic, Vec::Zero(3)));
  CHECK(z.skew_norm == 0.0);
  CHECK(z.cycle_distance == 0.0);
  CHECK(z.cut_distance == 0.0);
  Vec x(3);
  x << 0, 1, 0;
  const auto m = membership_tests(c3, cubic, make_point(c3, cubic, x));
  CHECK(m.passes());
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-2, 2);
  const auto k4 = graphs::complete(4);
  for (int t = 0; t < 20; ++t) {
    Vec r(4);
    for (int i = 0; i < 4; ++i) r(i) = u(rng);
    CHECK_FALSE(membership_tests(k4, sine(), make_point(k4, sine(), r)).passes());
  }
}

TEST_CASE("prediction") {
  const auto g = graphs::complete(4);
  const auto p3 = predict_equilibria_class(g, Coupling::odd_polynomial({0.0, 1.0}));
  CHECK(p3.cls == EquilibriaClass::OnlyZero);
  CHECK(p3.discrete);
  CHECK(predict_equilibria_class(g, Coupling::odd_polynomial({-1.0, 1.0})).cls == EquilibriaClass::NoConclusion);
  const auto inc = predict_equilibria_class(g, Coupling::odd_polynomial({1.0, 1.0}));
  CHECK(inc.cls == EquilibriaClass::OnlyZero);
  CHECK(inc.global_convergence);
  CHECK(predict_equilibria_class(g, sine()).cls == EquilibriaClass::NoConclusion);
  CHECK_THROWS_AS(predict_equilibria_class(Graph({}, 3), sine()), Error);
}
