// Serial reference vs OpenMP kernels. Thread count from OMP_NUM_THREADS.
#include <benchmark/benchmark.h>

#include "dss/deployment.hpp"
#include "dss/experiments.hpp"
#include "dss/radio_link.hpp"

using namespace dss;

namespace {

NodeSet bench_nodes(std::int64_t density) {
  return generate_ppp(static_cast<double>(density), Region{2000, 2000, {0, 0}}, 7);
}

void BM_GlobalRatesSerial(benchmark::State& st) {
  const RadioConfig r;
  const auto ns = bench_nodes(st.range(0));
  const auto g = build_graph(ns, 150, r);
  const NetworkState net(ns, g, r, true);
  for (auto _ : st) benchmark::DoNotOptimize(global_rates_serial(net));
  st.counters["nodes"] = static_cast<double>(ns.size());
}

void BM_GlobalRatesOmp(benchmark::State& st) {
  const RadioConfig r;
  const auto ns = bench_nodes(st.range(0));
  const auto g = build_graph(ns, 150, r);
  const NetworkState net(ns, g, r, true);
  for (auto _ : st) benchmark::DoNotOptimize(global_rates(net));
  st.counters["nodes"] = static_cast<double>(ns.size());
}

void BM_BuildGraphSerial(benchmark::State& st) {
  const RadioConfig r;
  const auto ns = bench_nodes(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(build_graph_serial(ns, 150, r));
}

void BM_BuildGraphOmp(benchmark::State& st) {
  const RadioConfig r;
  const auto ns = bench_nodes(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(build_graph(ns, 150, r));
}

void BM_NearestSerial(benchmark::State& st) {
  const auto ns = bench_nodes(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(nearest_neighbor_distances_serial(ns));
}

void BM_NearestOmp(benchmark::State& st) {
  const auto ns = bench_nodes(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(nearest_neighbor_distances(ns));
}

void BM_SweepPoint(benchmark::State& st) {
  SweepSpec s;
  s.densities = {static_cast<double>(st.range(0))};
  s.radii = {150};
  s.replications = 4;
  s.ccdf_points = 10;
  for (auto _ : st) benchmark::DoNotOptimize(run_synthetic_sweep(s));
}

}  // namespace

BENCHMARK(BM_GlobalRatesSerial)->Arg(125)->Arg(625);
BENCHMARK(BM_GlobalRatesOmp)->Arg(125)->Arg(625);
BENCHMARK(BM_BuildGraphSerial)->Arg(125)->Arg(625);
BENCHMARK(BM_BuildGraphOmp)->Arg(125)->Arg(625);
BENCHMARK(BM_NearestSerial)->Arg(125)->Arg(625);
BENCHMARK(BM_NearestOmp)->Arg(125)->Arg(625);
BENCHMARK(BM_SweepPoint)->Arg(250)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
