#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dss/experiments.hpp"
#include "dss/report_io.hpp"

using namespace dss;
namespace fs = std::filesystem;

namespace {

SweepSpec small_spec() {
  SweepSpec s;
  s.densities = {125};
  s.radii = {100};
  s.replications = 1;
  s.region = Region{400, 400, {0, 0}};
  s.ccdf_points = 10;
  s.sim.seed = 17;
  return s;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("synthetic sweep") {
  SUBCASE("one density, one radius, one replication gives two rows") {
    const auto res = run_synthetic_sweep(small_spec());
    REQUIRE(res.rows.size() == 2);
    CHECK(res.rows[0].scheme == Scheme::DSS);
    CHECK(res.rows[1].scheme == Scheme::Greedy);
    CHECK(res.rows[0].node_count == res.rows[1].node_count);
    CHECK(res.points.size() == 1);
  }
  SUBCASE("same seed, same rows") {
    auto spec = small_spec();
    spec.densities = {25, 250};
    spec.radii = {50, 150};
    spec.replications = 2;
    const auto a = run_synthetic_sweep(spec);
    const auto b = run_synthetic_sweep(spec);
    REQUIRE(a.rows.size() == 16);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      CHECK(a.rows[i].report == b.rows[i].report);
      CHECK(a.rows[i].triggers == b.rows[i].triggers);
    }
  }
  SUBCASE("empty deployments report null metrics") {
    auto spec = small_spec();
    spec.densities = {0};
    const auto res = run_synthetic_sweep(spec);
    REQUIRE(res.rows.size() == 2);
    CHECK(res.rows[0].node_count == 0);
    CHECK_FALSE(res.rows[0].report);
    CHECK(res.points[0].nonempty_replications == 0);
  }
  SUBCASE("node-count mode places exactly N nodes") {
    auto spec = small_spec();
    spec.node_counts = {30, 60};
    const auto res = run_synthetic_sweep(spec);
    REQUIRE(res.rows.size() == 4);
    CHECK(res.rows[0].node_count == 30);
    CHECK(res.rows[2].node_count == 60);
    CHECK(res.rows[2].area_km2 == doctest::Approx(60.0 / 125.0));
  }
  SUBCASE("invalid specs are rejected") {
    auto spec = small_spec();
    spec.radii.clear();
    spec.replications = 0;
    CHECK_THROWS_AS(run_synthetic_sweep(spec), ConfigValidationError);
  }
}

TEST_CASE("geo analysis") {
  const auto ns = generate_ppp(300, {1000, 1000, {0, 0}}, 8);
  SimConfig sim;
  sim.seed = 3;
  const RadioConfig r;
  const auto geo = run_geo_analysis(ns, 4, 4, r, sim, 10);
  REQUIRE(geo.cells.size() == 16);
  std::size_t sum = 0;
  for (const auto& c : geo.cells) {
    sum += c.node_count;
    CHECK(c.greedy.has_value() == (c.node_count > 0));
    if (c.node_count >= 2) CHECK(c.mean_nn_distance_m.has_value());
    if (c.node_count < 2) CHECK_FALSE(c.mean_nn_distance_m.has_value());
  }
  CHECK(sum == ns.size());
  CHECK(geo.total_nodes == ns.size());
  CHECK_THROWS(run_geo_analysis(NodeSet{}, 2, 2, r, sim));

  SUBCASE("csv writer emits a dss and a greedy line per cell plus a header") {
    const auto p = fs::temp_directory_path() / "dss_test_cells.csv";
    write_cells_csv(p, geo);
    const auto text = slurp(p);
    CHECK(std::count(text.begin(), text.end(), '\n') == 33);
    CHECK(geo_summary(geo)["cell_node_sum"] == ns.size());
  }
}

TEST_CASE("sample network") {
  const auto ns = generate_ppp(200, {800, 800, {0, 0}}, 21);
  SimConfig sim;
  sim.seed = 99;
  sim.R_N = 150;
  const RadioConfig r;

  SUBCASE("whole dataset by id list equals the 1x1 grid run") {
    std::vector<NodeId> all;
    for (NodeId i = 0; i < ns.size(); ++i) all.push_back(i);
    const auto sample = run_sample_network(ns, all, r, sim, 10);
    const auto geo = run_geo_analysis(ns, 1, 1, r, sim, 10);
    REQUIRE(geo.cells[0].dss);
    CHECK(sample.eval.dss_report == *geo.cells[0].dss);
    CHECK(sample.eval.greedy_report == *geo.cells[0].greedy);
  }
  SUBCASE("cell selection") {
    const auto sample = run_sample_network(ns, CellSelector{2, 2, 1, 0}, r, sim, 10);
    const auto cells = partition_grid(ns, 2, 2);
    CHECK(sample.source_ids == cells[2].node_ids);
    CHECK(sample.nodes.size() == cells[2].node_ids.size());
  }
  SUBCASE("single node gets the interference-free rate") {
    const auto sample = run_sample_network(ns, std::vector<NodeId>{5}, r, sim, 10);
    CHECK(sample.eval.dss.rate_per_node[0] == doctest::Approx(interference_free_rate(r, r.S)));
    CHECK(sample.eval.greedy.rate_per_node[0] == sample.eval.dss.rate_per_node[0]);
  }
  SUBCASE("selection errors") {
    CHECK_THROWS_AS(run_sample_network(ns, std::vector<NodeId>{}, r, sim), std::invalid_argument);
    CHECK_THROWS(run_sample_network(ns, std::vector<NodeId>{100000}, r, sim));
    CHECK_THROWS(run_sample_network(ns, CellSelector{2, 2, 5, 0}, r, sim));
  }
  SUBCASE("closest cell") {
    const auto c = cell_closest_to(ns, 2, 2, 1000);
    REQUIRE(c);
    const auto cells = partition_grid(ns, 2, 2);
    std::size_t best = 0;
    for (const auto& cell : cells) best = std::max(best, cell.node_ids.size());
    CHECK(cells[c->row * 2 + c->col].node_ids.size() == best);
  }
  SUBCASE("rates csv and summary") {
    const auto sample = run_sample_network(ns, CellSelector{1, 1, 0, 0}, r, sim, 10);
    const auto p = fs::temp_directory_path() / "dss_test_rates.csv";
    write_sample_rates_csv(p, sample, ns);
    const auto text = slurp(p);
    CHECK(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) == ns.size() + 1);
    const auto js = sample_summary(sample);
    CHECK(js.contains("dss"));
    CHECK(js.contains("greedy"));
  }
}

TEST_CASE("format_number round-trips") {
  for (double v : {0.0, 1.0, 0.1, 1e-300, 123456789.123, -2.5})
    CHECK(std::stod(format_number(v)) == v);
}
