#include <benchmark/benchmark.h>

#include "gdyn/continuation.hpp"
#include "gdyn/corpus.hpp"
#include "gdyn/equilibria.hpp"
#include "gdyn/generators.hpp"
#include "gdyn/homology.hpp"
#include "gdyn/simulator.hpp"
#include "gdyn/symmetry.hpp"

using namespace gdyn;

namespace {

const Coupling& sin1() {
  static const Coupling f = Coupling::sine_sum({{1, 1.0}});
  return f;
}

template <bool Parallel>
void BM_atlas(benchmark::State& st) {
  const auto g = graphs::complete(5);
  AtlasOptions o;
  o.starts = static_cast<int>(st.range(0));
  for (auto _ : st) {
    auto a = Parallel ? multistart_atlas(g, sin1(), o) : serial::multistart_atlas(g, sin1(), o);
    benchmark::DoNotOptimize(a.points.size());
  }
}

template <bool Parallel>
void BM_chain(benchmark::State& st) {
  const auto g = graphs::wheel(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    auto r = Parallel ? cycle_chain_number(g) : serial::cycle_chain_number(g);
    benchmark::DoNotOptimize(r.cc);
  }
}

template <bool Parallel>
void BM_cover(benchmark::State& st) {
  const auto g = graphs::asymmetric7();
  const auto h = graphs::complete(3);
  for (auto _ : st) {
    auto r = Parallel ? find_generalized_coverings(g, h) : serial::find_generalized_coverings(g, h);
    benchmark::DoNotOptimize(r.maps.size());
  }
}

template <bool Parallel>
void BM_basin(benchmark::State& st) {
  const auto g = graphs::complete(5);
  const Coupling f = Coupling::sine_sum({{1, -1.0}});
  const auto p = make_point(g, f, constructions::balanced_angles(5, 99));
  BasinOptions o;
  o.trials = static_cast<int>(st.range(0));
  o.integrate.t_end = 50.0;
  for (auto _ : st) {
    auto r = Parallel ? basin_sample(g, f, p, o) : serial::basin_sample(g, f, p, o);
    benchmark::DoNotOptimize(r.returned_fraction);
  }
}

template <bool Parallel>
void BM_sample(benchmark::State& st) {
  const auto g = graphs::theta();
  const auto p = make_point(g, sin1(), constructions::theta_point(0.3, 0.5));
  SampleOptions o;
  o.budget = static_cast<int>(st.range(0));
  for (auto _ : st) {
    auto s = Parallel ? sample_manifold(g, sin1(), p, o) : serial::sample_manifold(g, sin1(), p, o);
    benchmark::DoNotOptimize(s.points.size());
  }
}

}  // namespace

BENCHMARK(BM_atlas<false>)->Name("atlas/serial")->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_atlas<true>)->Name("atlas/parallel")->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_chain<false>)->Name("chain/serial")->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_chain<true>)->Name("chain/parallel")->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cover<false>)->Name("cover/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cover<true>)->Name("cover/parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_basin<false>)->Name("basin/serial")->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_basin<true>)->Name("basin/parallel")->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sample<false>)->Name("sample/serial")->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sample<true>)->Name("sample/parallel")->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
