#include "doctest.h"

#include <numbers>
#include <random>

#include "gdyn/corpus.hpp"
#include "gdyn/errors.hpp"
#include "gdyn/field.hpp"
#include "gdyn/generators.hpp"
#include "gdyn/stability.hpp"

using namespace gdyn;
constexpr double kPi = std::numbers::pi;

namespace {
const Coupling& sine() {
  static const Coupling f = Coupling::sine_sum({{1, 1.0}});
  return f;
}
}  // namespace

TEST_CASE("hessian") {
  const auto k3 = graphs::complete(3);
  const Mat h = hessian(k3, sine(), Vec::Zero(3));
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  CHECK(std::abs(es.eigenvalues()(0)) < 1e-14);
  CHECK(es.eigenvalues()(1) == doctest::Approx(3.0));
  CHECK(es.eigenvalues()(2) == doctest::Approx(3.0));

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3, 3);
  const auto f = Coupling::sine_sum({{1, 1.0}, {3, -1.0}});
  for (int t = 0; t < 20; ++t) {
    const auto g = graphs::random_connected(5, 3, rng());
    Vec x(g.n());
    for (int i = 0; i < g.n(); ++i) x(i) = u(rng);
    const Mat H = hessian(g, f, x);
    CHECK((H - H.transpose()).norm() == 0.0);
    CHECK((H * Vec::Ones(g.n())).norm() < 1e-12);
    Mat J(g.n(), g.n());
    const double step = 1e-6;
    for (int i = 0; i < g.n(); ++i) {
      Vec a = x, b = x;
      a(i) += step;
      b(i) -= step;
      J.col(i) = (vector_field(g, f, a) - vector_field(g, f, b)) / (2 * step);
    }
    CHECK((J + H).norm() <= 1e-5 * (1 + H.norm()));
  }
}

TEST_CASE("classify") {
  const auto k5 = graphs::complete(5);
  const auto r0 = classify(k5, sine(), make_point(k5, sine(), Vec::Zero(5)));
  CHECK(r0.verdict == Verdict::LinearlyStableUpToSymmetry);
  CHECK(r0.positive_edge_shortcut);
  CHECK(r0.rank + r0.zero_multiplicity == 5);

  const auto anti = Coupling::sine_sum({{1, -1.0}});
  for (int n : {4, 5, 6}) {
    const auto kn = graphs::complete(n);
    const auto r = classify(kn, anti, make_point(kn, anti, constructions::balanced_angles(n, 5)));
    CHECK(r.verdict == Verdict::StableNormallyHyperbolic);
    CHECK(r.normal_dim == n - 3);
  }

  Vec x(4);
  x << 0, kPi, 0, 0;
  const auto k4 = graphs::complete(4);
  const auto u = classify(k4, sine(), make_point(k4, sine(), x));
  CHECK(u.verdict == Verdict::Unstable);
  CHECK(u.spectrum(0) < -u.zero_threshold);

  // zero multiplicity above what the given local_dim accounts for
  const auto e = graphs::path(2);
  const auto cube = Coupling::odd_polynomial({0.0, 1.0});
  const auto p0 = make_point(e, cube, Vec::Zero(2));
  CHECK(classify(e, cube, p0, 0).verdict == Verdict::Degenerate);
  CHECK(classify(e, cube, p0).rule.find("(c)") == 0);

  const auto far = classify(k4, sine(), make_point(k4, sine(), constructions::k4_curve_state(0.7)), 1);
  CHECK(far.verdict == Verdict::Unstable);
}

TEST_CASE("positive edge shortcut") {
  // twisted states on cycles: consecutive differences 2 pi q / n below pi / 2
  for (int n = 5; n <= 12; ++n)
    for (int q = 0; 4 * q < n; ++q) {
      const auto g = graphs::cycle(n);
      Vec x(n);
      for (int k = 0; k < n; ++k) x(k) = 2 * kPi * q * k / n;
      const auto p = make_point(g, sine(), x);
      REQUIRE(p.residual <= 1e-12);
      const auto r = classify(g, sine(), p);
      CHECK(r.positive_edge_shortcut);
      CHECK(r.verdict == Verdict::LinearlyStableUpToSymmetry);
    }
}

TEST_CASE("block stability") {
  const auto bow = graphs::glue(graphs::cycle(3), 0, graphs::cycle(3), 0);
  const auto b0 = block_stability(bow, sine(), Vec::Zero(5));
  CHECK(b0.blocks.size() == 2);
  CHECK(b0.combined == Verdict::LinearlyStableUpToSymmetry);
  CHECK(b0.consistent);
  Vec x(5);
  x << 0, kPi, 0, 0, 0;
  const auto b1 = block_stability(bow, sine(), x);
  CHECK(b1.combined == Verdict::Unstable);
  CHECK(b1.direct.verdict == Verdict::Unstable);
  const std::vector<std::pair<int, int>> cut{{0, 1}, {2, 3}};
  CHECK_THROWS_AS(block_stability(build_graph(cut), sine(), Vec::Zero(4)), Error);
}

TEST_CASE("batch classification matches serial") {
  const auto k4 = graphs::complete(4);
  std::vector<EquilibriumPoint> pts;
  for (int k = 0; k < 40; ++k) pts.push_back(make_point(k4, sine(), constructions::k4_curve_state(0.157 * k)));
  const auto a = classify_batch(k4, sine(), pts);
  const auto b = serial::classify_batch(k4, sine(), pts);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].verdict == b[i].verdict);
    CHECK(a[i].spectrum == b[i].spectrum);
  }
}
