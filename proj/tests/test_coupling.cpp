#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "gdyn/coupling.hpp"
#include "gdyn/errors.hpp"
#include "oracles.hpp"

using namespace gdyn;
constexpr double kPi = std::numbers::pi;

namespace {
std::vector<double> roots_of(const Coupling& f, double lo, double hi) {
  std::vector<double> out;
  for (const auto& r : f.zeros_in(lo, hi).roots) out.push_back(r.value);
  return out;
}
ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::NoConvergence;
}
std::vector<Coupling> families() {
  return {Coupling::odd_polynomial({-1.0, 1.0}), Coupling::odd_polynomial({1.0, 1.0}),
          Coupling::odd_polynomial({0.0, 0.0, 2.0}), Coupling::sine_sum({{1, 1.0}}),
          Coupling::sine_sum({{1, 1.0}, {3, -1.0}}), Coupling::sine_sum({{2, 0.5}, {5, 1.0}}),
          Coupling::sine_series(kPi, {{1, 1.0}}), Coupling::sine_series(2.0, {{1, 1.0}, {3, 0.4}})};
}
}  // namespace

TEST_CASE("polynomial construction") {
  const auto f = Coupling::odd_polynomial({-1.0, 1.0});
  CHECK(f(2.0) == doctest::Approx(6.0));
  CHECK(f.deriv(0.0) == -1.0);
  CHECK(f.finite_fibers());
  CHECK_FALSE(f.period());
  CHECK(Coupling::odd_polynomial({1.0}).increasing());
  CHECK(code_of([] { Coupling::odd_polynomial({}); }) == ErrorCode::AllZero);
  CHECK(code_of([] { Coupling::odd_polynomial({0.0}); }) == ErrorCode::AllZero);
}

TEST_CASE("sine combinations") {
  const auto s = Coupling::sine_sum({{1, 1.0}});
  CHECK(s(0.5) == doctest::Approx(std::sin(0.5)));
  CHECK(*s.period() == doctest::Approx(2 * kPi));
  CHECK_FALSE(s.finite_fibers());
  const auto s2 = Coupling::sine_sum({{2, 1.0}});
  CHECK(*s2.period() == doctest::Approx(kPi));
  const auto b = Coupling::sine_sum({{1, 1.0}, {3, -1.0}});
  CHECK(b(1.1) == doctest::Approx(std::sin(1.1) - std::sin(3.3)));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int k = 0; k < 100; ++k) {
    const double x = u(rng);
    CHECK(std::abs(b(kPi + x) + b(x)) < 1e-12);
  }
  CHECK(code_of([] { Coupling::sine_sum({{1, 0.0}}); }) == ErrorCode::AllZero);
  CHECK(code_of([] { Coupling::sine_series(kPi, {{2, 1.0}}); }) == ErrorCode::InvalidCoupling);
}

TEST_CASE("sine series antiperiodicity") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-10, 10);
  for (double P : {kPi, 2.0, 0.7}) {
    const auto f = Coupling::sine_series(P, {{1, 1.0}, {3, 0.25}, {7, -0.1}});
    for (int k = 0; k < 1000; ++k) {
      const double x = u(rng);
      CHECK(std::abs(f(P + x) + f(x)) <= 1e-12);
    }
  }
}

TEST_CASE("oddness, derivative and primitive") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-10, 10);
  for (const auto& f : families()) {
    for (int k = 0; k < 1000; ++k) {
      const double x = u(rng);
      CHECK(std::abs(f(-x) + f(x)) <= 2 * std::numeric_limits<double>::epsilon() * std::abs(f(x)));
    }
    for (int k = 0; k < 100; ++k) {
      const double x = u(rng) / 4.0, h = 1e-4;
      const double fd = (f(x + h) - f(x - h)) / (2 * h);
      CHECK(std::abs(f.deriv(x) - fd) <= 1e-5 * (1 + std::abs(f.deriv(x))));
      const double fd2 = (f.deriv(x + h) - f.deriv(x - h)) / (2 * h);
      CHECK(std::abs(f.second_deriv(x) - fd2) <= 1e-4 * (1 + std::abs(fd2)));
    }
    CHECK(f.primitive(0.0) == 0.0);
    for (int k = 0; k < 20; ++k) {
      const double x = u(rng);
      CHECK(std::abs(f.primitive(x) - oracle::simpson_primitive(f, x, 20000)) <= 1e-8 * (1 + std::abs(f.primitive(x))));
    }
  }
  CHECK(Coupling::sine_sum({{1, 1.0}}).primitive(kPi / 2) == doctest::Approx(1.0));
}

TEST_CASE("zeros_in") {
  const auto r1 = roots_of(Coupling::odd_polynomial({-1.0, 1.0}), -2, 2);
  REQUIRE(r1.size() == 3);
  CHECK(r1[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(r1[1]) < 1e-12);
  CHECK(r1[2] == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& r : Coupling::odd_polynomial({-1.0, 1.0}).zeros_in(-2, 2).roots) CHECK(r.sign_change);

  const auto r2 = roots_of(Coupling::sine_sum({{1, 1.0}}), 0, 7);
  REQUIRE(r2.size() == 3);
  CHECK(std::abs(r2[0]) < 1e-12);
  CHECK(std::abs(r2[1] - kPi) < 1e-11);
  CHECK(std::abs(r2[2] - 2 * kPi) < 1e-11);

  const auto z3 = Coupling::odd_polynomial({0.0, 1.0}).zeros_in(-1, 1).roots;
  REQUIRE(z3.size() == 1);
  CHECK(std::abs(z3[0].value) < 1e-6);
  CHECK(z3[0].sign_change);

  // triple root at 0
  const auto t = Coupling::sine_sum({{1, 1.0}, {2, -0.5}});
  const auto zs = t.zeros_in(-1, 1).roots;
  REQUIRE(zs.size() == 1);
  CHECK(std::abs(zs[0].value) < 1e-4);

  // tangential roots of x^3 - 2 x^5 + x^7 = x^3 (x^2 - 1)^2 at +-1
  const auto tz = Coupling::odd_polynomial({0.0, 1.0, -2.0, 1.0}).zeros_in(0.5, 1.5).roots;
  REQUIRE(tz.size() == 1);
  CHECK(tz[0].value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_FALSE(tz[0].sign_change);
}

TEST_CASE("classification flags") {
  CHECK(Coupling::odd_polynomial({1.0, 1.0}).increasing());
  CHECK_FALSE(Coupling::odd_polynomial({-1.0, 1.0}).increasing());
  CHECK(Coupling::odd_polynomial({0.0, 1.0}).increasing());
  CHECK(Coupling::odd_polynomial({0.0, 1.0}).sign_on_positives() == SignOnPositives::NonNegative);
  CHECK(Coupling::odd_polynomial({-1.0, 1.0}).sign_on_positives() == SignOnPositives::Mixed);
  CHECK(Coupling::odd_polynomial({-1.0}).sign_on_positives() == SignOnPositives::NonPositive);
  CHECK(Coupling::sine_sum({{1, 1.0}}).sign_on_positives() == SignOnPositives::Mixed);
  CHECK_FALSE(Coupling::sine_sum({{1, 1.0}}).increasing());
  CHECK(Coupling::odd_polynomial({1.0, 1.0}).positive_zeros().empty());
  const auto pz = Coupling::sine_sum({{1, 1.0}}).positive_zeros();
  REQUIRE_FALSE(pz.empty());
  CHECK(pz.front().value == doctest::Approx(kPi));
}
