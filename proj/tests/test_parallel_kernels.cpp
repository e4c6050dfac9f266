#include <doctest.h>

#include <omp.h>

#include <random>

#include "dss/deployment.hpp"
#include "dss/experiments.hpp"
#include "dss/radio_link.hpp"

using namespace dss;

// The parallel kernels must agree with the serial reference bit for bit,
// whatever the thread count.

TEST_CASE("global_rates matches the serial loop exactly") {
  const RadioConfig r;
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto ns = generate_ppp(400, {1000, 1000, {0, 0}}, seed);
    const auto g = build_graph(ns, 150, r);
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.4);
    std::vector<Sbos> sbos;
    for (std::size_t v = 0; v < ns.size(); ++v) {
      Sbos b(r.S);
      for (std::size_t k = 0; k < b.size(); ++k) b.set_occupied(k, coin(rng));
      sbos.push_back(b);
    }
    const NetworkState st(ns, g, r, sbos);
    const auto serial = global_rates_serial(st);
    for (int threads : {1, 2, 4}) {
      omp_set_num_threads(threads);
      CHECK(global_rates(st) == serial);
    }
  }
}

TEST_CASE("graph build and nearest neighbours match across thread counts") {
  const RadioConfig r;
  const auto ns = generate_ppp(2000, {1000, 1000, {0, 0}}, 9);
  const auto g_serial = build_graph_serial(ns, 100, r);
  const auto nn_serial = nearest_neighbor_distances_serial(ns);
  for (int threads : {1, 3}) {
    omp_set_num_threads(threads);
    CHECK(build_graph(ns, 100, r) == g_serial);
    CHECK(nearest_neighbor_distances(ns) == nn_serial);
  }
}

TEST_CASE("sweep output does not depend on the thread count") {
  SweepSpec s;
  s.densities = {125, 375};
  s.radii = {100};
  s.replications = 2;
  s.region = Region{500, 500, {0, 0}};
  s.ccdf_points = 5;
  omp_set_num_threads(1);
  const auto a = run_synthetic_sweep(s);
  omp_set_num_threads(4);
  const auto b = run_synthetic_sweep(s);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].report == b.rows[i].report);
}
