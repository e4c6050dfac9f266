#include "dss/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dss/rng.hpp"

namespace dss {

void validate_sweep(const SweepSpec& spec) {
  std::vector<ConfigError> errs = check_radio(spec.radio);
  auto sim_errs = check_sim(spec.sim);
  errs.insert(errs.end(), sim_errs.begin(), sim_errs.end());
  if (spec.densities.empty()) errs.push_back({"densities", "densities must be non-empty"});
  if (spec.radii.empty()) errs.push_back({"radii", "radii must be non-empty"});
  if (spec.replications < 1) errs.push_back({"replications", "replications must be >= 1"});
  for (double d : spec.densities)
    if (!(d >= 0.0) || !std::isfinite(d)) errs.push_back({"densities", "densities must be >= 0"});
  for (double r : spec.radii)
    if (!(r > 0.0) || !std::isfinite(r)) errs.push_back({"radii", "radii must be > 0"});
  if (!spec.node_counts.empty())
    for (double d : spec.densities)
      if (!(d > 0.0)) errs.push_back({"densities", "node-count mode needs densities > 0"});
  if (!(spec.region.width > 0.0) || !(spec.region.height > 0.0))
    errs.push_back({"region", "region width and height must be > 0"});
  if (!errs.empty()) throw ConfigValidationError(std::move(errs));
}

NetworkEvaluation evaluate_network(const NodeSet& nodes, const InterferenceGraph& graph,
                                   double area_km2, const RadioConfig& radio,
                                   const SimConfig& sim, std::size_t ccdf_points,
                                   const TraceSink& trace) {
  NetworkEvaluation e;
  e.area_km2 = area_km2;
  e.greedy = run_greedy(nodes, graph, radio);
  const Thresholds thresholds = thresholds_from_greedy(e.greedy, sim.threshold_factor);
  e.dss = run_dss(nodes, graph, radio, sim, thresholds, trace);

  double max_rate = 0.0;
  for (double r : e.greedy.rate_per_node) max_rate = std::max(max_rate, r);
  for (double r : e.dss.rate_per_node) max_rate = std::max(max_rate, r);
  const auto grid = ccdf_grid(max_rate, ccdf_points);
  e.greedy_report = compute_report(e.greedy, area_km2, radio, grid);
  e.dss_report = compute_report(e.dss, area_km2, radio, grid);
  e.improvement = improvement(e.dss_report, e.greedy_report);
  return e;
}

namespace {

struct SweepItem {
  std::size_t density_idx = 0;
  std::optional<std::size_t> count_idx;
  std::size_t radius_idx = 0;
  std::size_t replication = 0;
};

double mean_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

SweepResult run_synthetic_sweep(const SweepSpec& spec) {
  validate_sweep(spec);

  std::vector<SweepItem> items;
  std::vector<std::optional<std::size_t>> counts;
  if (spec.node_counts.empty()) {
    counts.push_back(std::nullopt);
  } else {
    for (std::size_t i = 0; i < spec.node_counts.size(); ++i) counts.push_back(i);
  }
  for (std::size_t di = 0; di < spec.densities.size(); ++di)
    for (const auto& ci : counts)
      for (std::size_t ri = 0; ri < spec.radii.size(); ++ri)
        for (std::size_t rep = 0; rep < spec.replications; ++rep) items.push_back({di, ci, ri, rep});

  std::vector<std::pair<SweepRow, SweepRow>> out(items.size());
  const std::uint64_t master = spec.sim.seed;
  const auto n_items = static_cast<std::ptrdiff_t>(items.size());

#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t ii = 0; ii < n_items; ++ii) {
    const SweepItem& it = items[static_cast<std::size_t>(ii)];
    const double density = spec.densities[it.density_idx];
    const double radius = spec.radii[it.radius_idx];
    const std::uint64_t count_key = it.count_idx ? *it.count_idx + 1 : 0;
    // Deployment seed skips the radius so every radius sees the same network.
    const std::uint64_t deploy_seed = derive_seed(master, {it.density_idx, count_key, it.replication, 0});
    const std::uint64_t clock_seed =
        derive_seed(master, {it.density_idx, count_key, it.radius_idx, it.replication, 1});

    NodeSet nodes;
    Region region = spec.region;
    std::optional<std::size_t> requested;
    if (it.count_idx) {
      requested = spec.node_counts[*it.count_idx];
      const double side_m = std::sqrt(static_cast<double>(*requested) / density) * 1000.0;
      region = Region{side_m, side_m, {0.0, 0.0}};
      nodes = generate_uniform(*requested, region, deploy_seed);
    } else {
      nodes = generate_ppp(density, region, deploy_seed);
    }

    SweepRow base;
    base.density = density;
    base.radius = radius;
    base.requested_nodes = requested;
    base.replication = it.replication;
    base.node_count = nodes.size();
    base.area_km2 = region.area_km2();
    SweepRow dss_row = base, greedy_row = base;
    dss_row.scheme = Scheme::DSS;
    greedy_row.scheme = Scheme::Greedy;

    if (!nodes.empty()) {
      SimConfig sim = spec.sim;
      sim.R_N = radius;
      sim.seed = clock_seed;
      const InterferenceGraph graph = build_graph(nodes, radius, spec.radio);
      NetworkEvaluation e =
          evaluate_network(nodes, graph, region.area_km2(), spec.radio, sim, spec.ccdf_points);
      dss_row.report = std::move(e.dss_report);
      dss_row.triggers = e.dss.triggers_executed;
      dss_row.converged = e.dss.converged;
      greedy_row.report = std::move(e.greedy_report);
    }
    out[static_cast<std::size_t>(ii)] = {std::move(dss_row), std::move(greedy_row)};
  }

  SweepResult result;
  result.rows.reserve(2 * out.size());
  for (auto& [d, g] : out) {
    result.rows.push_back(std::move(d));
    result.rows.push_back(std::move(g));
  }

  // Items for one point are contiguous: replications are the innermost loop.
  for (std::size_t start = 0; start < items.size(); start += spec.replications) {
    SweepPointSummary s;
    const SweepRow& first = out[start].first;
    s.density = first.density;
    s.radius = first.radius;
    s.requested_nodes = first.requested_nodes;
    s.replications = spec.replications;
    std::vector<double> dr, gr, df, gf, fdelta, dse, gse, dase, gase;
    for (std::size_t k = start; k < start + spec.replications; ++k) {
      const auto& [d, g] = out[k];
      if (!d.report || !g.report) continue;
      ++s.nonempty_replications;
      if (d.converged) ++s.converged_replications;
      dr.push_back(d.report->mean_rate_bps);
      gr.push_back(g.report->mean_rate_bps);
      dse.push_back(d.report->mean_se_bps_per_hz);
      gse.push_back(g.report->mean_se_bps_per_hz);
      dase.push_back(d.report->ase_bps_per_hz_per_km2.value_or(0.0));
      gase.push_back(g.report->ase_bps_per_hz_per_km2.value_or(0.0));
      if (d.report->fairness_index && g.report->fairness_index) {
        df.push_back(*d.report->fairness_index);
        gf.push_back(*g.report->fairness_index);
        fdelta.push_back(*d.report->fairness_index - *g.report->fairness_index);
      }
    }
    s.dss_mean_rate_bps = mean_of(dr);
    s.greedy_mean_rate_bps = mean_of(gr);
    s.dss_mean_se = mean_of(dse);
    s.greedy_mean_se = mean_of(gse);
    // Empty replications count as zero throughput over the region.
    s.dss_ase = mean_of(dase) * static_cast<double>(dase.size()) / static_cast<double>(spec.replications);
    s.greedy_ase = mean_of(gase) * static_cast<double>(gase.size()) / static_cast<double>(spec.replications);
    if (!df.empty()) {
      s.dss_fairness = mean_of(df);
      s.greedy_fairness = mean_of(gf);
      s.fairness_abs_delta = mean_of(fdelta);
    }
    s.mean_rate_improvement_pct = percent_change(s.dss_mean_rate_bps, s.greedy_mean_rate_bps);
    s.se_improvement_pct = percent_change(s.dss_mean_se, s.greedy_mean_se);
    s.ase_improvement_pct = percent_change(s.dss_ase, s.greedy_ase);
    result.points.push_back(std::move(s));
  }
  return result;
}

namespace {

CellRow evaluate_cell(const NodeSet& all, const GridCell& cell, std::size_t index,
                      const RadioConfig& radio, const SimConfig& sim, std::size_t ccdf_points,
                      const TraceSink& trace = {}, SampleBundle* bundle = nullptr) {
  CellRow row;
  row.row = cell.row;
  row.col = cell.col;
  row.node_count = cell.node_ids.size();
  row.area_km2 = cell.bounds.area_km2();
  if (cell.node_ids.empty()) return row;

  NodeSet nodes = all.subset(cell.node_ids);
  if (nodes.size() >= 2) {
    const auto nn = nearest_neighbor_distances(nodes);
    row.mean_nn_distance_m = mean_of(nn);
  }
  SimConfig cell_sim = sim;
  cell_sim.seed = derive_seed(sim.seed, {index});
  InterferenceGraph graph = build_graph(nodes, sim.R_N, radio);
  NetworkEvaluation e = evaluate_network(nodes, graph, row.area_km2, radio, cell_sim, ccdf_points, trace);
  row.greedy = e.greedy_report;
  row.dss = e.dss_report;
  row.improvement = e.improvement;
  row.triggers = e.dss.triggers_executed;
  row.converged = e.dss.converged;
  if (bundle) {
    bundle->source_ids = cell.node_ids;
    bundle->nodes = std::move(nodes);
    bundle->graph = std::move(graph);
    bundle->eval = std::move(e);
  }
  return row;
}

}  // namespace

GeoResult run_geo_analysis(const NodeSet& nodes, std::size_t rows, std::size_t cols,
                           const RadioConfig& radio, const SimConfig& sim,
                           std::size_t ccdf_points) {
  validate_config(radio, sim);
  GeoResult g;
  g.total_nodes = nodes.size();
  g.frame = bounding_box(nodes);
  const auto cells = partition_grid(nodes, rows, cols);
  g.cells.resize(cells.size());
  const auto n = static_cast<std::ptrdiff_t>(cells.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    g.cells[idx] = evaluate_cell(nodes, cells[idx], idx, radio, sim, ccdf_points);
  }
  return g;
}

GeoResult run_geo_analysis(const std::filesystem::path& dataset, CsvMode mode, std::size_t rows,
                           std::size_t cols, const RadioConfig& radio, const SimConfig& sim,
                           std::size_t ccdf_points) {
  const NodeSet nodes = ingest_ap_csv(dataset, mode);
  if (nodes.empty()) throw std::invalid_argument("dataset has no access points: " + dataset.string());
  return run_geo_analysis(nodes, rows, cols, radio, sim, ccdf_points);
}

SampleBundle run_sample_network(const NodeSet& all, const NodeSelection& selection,
                                const RadioConfig& radio, const SimConfig& sim,
                                std::size_t ccdf_points, const TraceSink& trace) {
  validate_config(radio, sim);
  if (all.empty()) throw std::invalid_argument("selection matches no nodes: dataset is empty");

  GridCell cell;
  std::size_t index = 0;
  if (const auto* sel = std::get_if<CellSelector>(&selection)) {
    if (sel->row >= sel->rows || sel->col >= sel->cols)
      throw std::invalid_argument("cell selector outside the grid");
    auto cells = partition_grid(all, sel->rows, sel->cols);
    index = sel->row * sel->cols + sel->col;
    cell = std::move(cells[index]);
  } else {
    const auto& ids = std::get<std::vector<NodeId>>(selection);
    for (NodeId id : ids)
      if (id >= all.size()) throw std::invalid_argument("node id " + std::to_string(id) + " not in dataset");
    cell.node_ids = ids;
    if (!ids.empty()) cell.bounds = bounding_box(all.subset(ids));
  }
  if (cell.node_ids.empty()) throw std::invalid_argument("selection matches no nodes");

  SampleBundle b;
  evaluate_cell(all, cell, index, radio, sim, ccdf_points, trace, &b);
  b.greedy_box = box_stats(b.eval.greedy.rate_per_node);
  b.dss_box = box_stats(b.eval.dss.rate_per_node);
  return b;
}

std::optional<CellSelector> cell_closest_to(const NodeSet& nodes, std::size_t rows,
                                            std::size_t cols, std::size_t target) {
  if (nodes.empty()) return std::nullopt;
  const auto cells = partition_grid(nodes, rows, cols);
  std::optional<CellSelector> best;
  std::size_t best_gap = 0;
  for (const auto& c : cells) {
    if (c.node_ids.empty()) continue;
    const std::size_t n = c.node_ids.size();
    const std::size_t gap = n > target ? n - target : target - n;
    if (!best || gap < best_gap) {
      best = CellSelector{rows, cols, c.row, c.col};
      best_gap = gap;
    }
  }
  return best;
}

}  // namespace dss
