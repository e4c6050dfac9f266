#include <doctest.h>

#include <cmath>
#include <random>

#include "dss/deployment.hpp"
#include "dss/radio_link.hpp"
#include "oracles/reference_dss.hpp"

using namespace dss;

namespace {

std::vector<Sbos> random_states(std::size_t n, std::size_t S, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(0.5);
  std::vector<Sbos> out;
  for (std::size_t v = 0; v < n; ++v) {
    Sbos b(S);
    for (std::size_t k = 0; k < S; ++k) b.set_occupied(k, coin(rng));
    out.push_back(b);
  }
  return out;
}

}  // namespace

TEST_CASE("sinr with no interferers") {
  const RadioConfig r;  // P_T 1, d_ref 30, alpha 4, n0 = 4e-21 * 2e7
  const NodeSet ns({{0, 0}});
  const auto g = build_graph(ns, 300, r);
  const NetworkState st(ns, g, r, true);
  const double expected = std::pow(30.0, -4.0) / (4e-21 * 2e7);
  CHECK(expected == doctest::Approx(1.543e7).epsilon(1e-3));
  for (auto scope : {Scope::Local, Scope::Global})
    CHECK(sinr(0, 3, st, scope) == doctest::Approx(expected).epsilon(1e-12));
  CHECK_THROWS(sinr(0, 10, st, Scope::Local));
}

TEST_CASE("equal-distance interferer gives SINR close to one") {
  const RadioConfig r;
  const NodeSet ns({{0, 0}, {30, 0}});
  const auto g = build_graph(ns, 300, r);
  NetworkState st(ns, g, r, true);
  CHECK(sinr(0, 0, st, Scope::Global) == doctest::Approx(1.0).epsilon(1e-6));
  // Unoccupied on band 0: contributes nothing there.
  st.set_sbos(1, Sbos::from_states({-1, 1, 1, 1, 1, 1, 1, 1, 1, 1}));
  CHECK(sinr(0, 0, st, Scope::Global) == doctest::Approx(std::pow(30.0, -4.0) / r.n0()));
  CHECK(sinr(0, 1, st, Scope::Global) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("node_rate sums per-band Shannon capacities") {
  RadioConfig r;
  r.S = 2;
  const NodeSet ns({{0, 0}});
  const auto g = build_graph(ns, 300, r);
  const NetworkState st(ns, g, r, true);
  SUBCASE("SINR 1 on one band is W bits/s") {
    const std::vector<double> interference{r.P_T * path_gain(r.d_ref, r) - r.n0(), 0.0};
    CHECK(rate_from_interference(Sbos::from_states({1, -1}), interference, r) == doctest::Approx(2e7));
  }
  SUBCASE("SINRs 1 and 3") {
    const double sig = signal_power(r);
    const std::vector<double> interference{sig - r.n0(), sig / 3.0 - r.n0()};
    CHECK(rate_from_interference(Sbos::all_occupied(2), interference, r) == doctest::Approx(6e7));
  }
  SUBCASE("nothing occupied is zero") { CHECK(node_rate(0, Sbos(2), st, Scope::Global) == 0.0); }
  SUBCASE("isolated node reaches the interference-free rate") {
    CHECK(estimate_qos(0, Sbos::all_occupied(2), st) ==
          doctest::Approx(interference_free_rate(r, 2)).epsilon(1e-14));
  }
}

TEST_CASE("local and global scopes") {
  const RadioConfig r;
  SUBCASE("3-node chain: the end node's local view ignores the far end") {
    const NodeSet ns({{0, 0}, {100, 0}, {200, 0}});
    const auto g = build_graph(ns, 150, r);
    const NetworkState st(ns, g, r, true);
    const double local = estimate_qos(0, st.sbos(0), st);
    const double global = node_rate(0, st.sbos(0), st, Scope::Global);
    CHECK(local > global);
    // Independent evaluation of both sides.
    oracle::DenseNet net{{{0, 0}, {100, 0}, {200, 0}}, 150, r};
    oracle::States all(3, std::vector<int>(10, 1));
    CHECK(global == doctest::Approx(oracle::global_rate(net, 0, all)).epsilon(1e-14));
    oracle::DenseNet only_near{{{0, 0}, {100, 0}}, 150, r};
    CHECK(local == doctest::Approx(oracle::global_rate(only_near, 0, {all[0], all[1]})).epsilon(1e-14));
  }
  SUBCASE("complete graph: scopes coincide exactly") {
    const auto ns = generate_ppp(40, {200, 200, {0, 0}}, 4);
    const auto g = build_graph(ns, 1000, r);
    std::mt19937_64 rng(8);
    const NetworkState st(ns, g, r, random_states(ns.size(), 10, rng));
    for (NodeId v = 0; v < ns.size(); ++v)
      CHECK(estimate_qos(v, st.sbos(v), st) == node_rate(v, st.sbos(v), st, Scope::Global));
  }
}

TEST_CASE("rate properties on random networks") {
  RadioConfig r;
  r.S = 6;
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const auto ns = generate_ppp(300, {600, 600, {0, 0}}, 1000 + trial);
    if (ns.size() < 2) continue;
    const auto g = build_graph(ns, 80, r);
    NetworkState st(ns, g, r, random_states(ns.size(), 6, rng));
    for (NodeId v = 0; v < ns.size(); v += 7) {
      for (std::size_t k = 0; k < 6; ++k) {
        const double l = sinr(v, k, st, Scope::Local);
        const double gl = sinr(v, k, st, Scope::Global);
        CHECK(l >= gl);
        CHECK(std::isfinite(gl));
        CHECK(gl > 0.0);
      }
      // Adding an occupied band never lowers the estimate.
      Sbos b = st.sbos(v);
      double prev = estimate_qos(v, b, st);
      CHECK(prev >= 0.0);
      for (std::size_t k = 0; k < 6; ++k) {
        if (b.occupied(k)) continue;
        b.set_occupied(k, true);
        const double next = estimate_qos(v, b, st);
        CHECK(next >= prev);
        prev = next;
      }
    }
    // A new interferer on band k strictly lowers SINR there.
    const NodeId v = 0;
    for (const auto& nb : g.neighbors(v)) {
      Sbos b = st.sbos(nb.id);
      for (std::size_t k = 0; k < 6; ++k) {
        if (b.occupied(k)) continue;
        const double before = sinr(v, k, st, Scope::Local);
        Sbos with = b;
        with.set_occupied(k, true);
        NetworkState st2 = st;
        st2.set_sbos(nb.id, with);
        CHECK(sinr(v, k, st2, Scope::Local) < before);
      }
      break;
    }
  }
}

TEST_CASE("co-located APs stay finite thanks to d_min") {
  const RadioConfig r;
  const NodeSet ns({{5, 5}, {5, 5}});
  const auto g = build_graph(ns, 300, r);
  const NetworkState st(ns, g, r, true);
  const double rate = node_rate(0, st.sbos(0), st, Scope::Global);
  CHECK(std::isfinite(rate));
  CHECK(rate > 0.0);
}
