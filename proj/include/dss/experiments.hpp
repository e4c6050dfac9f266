#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dss/deployment.hpp"
#include "dss/engine.hpp"
#include "dss/interference_graph.hpp"
#include "dss/metrics.hpp"
#include "dss/network_model.hpp"

namespace dss {

struct SweepSpec {
  std::vector<double> densities{25, 125, 250, 375, 500, 625};  // km^-2
  std::vector<double> radii{50, 100, 150};                     // m
  /// Empty: PPP over `region`. Otherwise exactly N uniform nodes in a square
  /// of area N / density.
  std::vector<std::size_t> node_counts;
  std::size_t replications = 20;
  Region region{1000.0, 1000.0, {0.0, 0.0}};
  std::size_t ccdf_points = 50;
  RadioConfig radio;
  SimConfig sim;  // sim.seed is the master seed; sim.R_N is overridden per point
};

/// Throws ConfigValidationError listing every problem.
void validate_sweep(const SweepSpec& spec);

/// Greedy, thresholds, DSS and both metric reports for one network.
struct NetworkEvaluation {
  AllocationResult greedy;
  AllocationResult dss;
  MetricReport greedy_report;
  MetricReport dss_report;
  Improvement improvement;
  double area_km2 = 0.0;
};

/// `sim.seed` drives the DSS clocks. CCDF thresholds span 0..max rate of
/// either scheme.
NetworkEvaluation evaluate_network(const NodeSet& nodes, const InterferenceGraph& graph,
                                   double area_km2, const RadioConfig& radio,
                                   const SimConfig& sim, std::size_t ccdf_points,
                                   const TraceSink& trace = {});

struct SweepRow {
  double density = 0.0;
  double radius = 0.0;
  std::optional<std::size_t> requested_nodes;
  std::size_t replication = 0;
  Scheme scheme = Scheme::DSS;
  std::size_t node_count = 0;
  double area_km2 = 0.0;
  /// Unset for an empty deployment.
  std::optional<MetricReport> report;
  std::int64_t triggers = 0;
  bool converged = true;
};

/// One (density, radius, node count) point aggregated over replications.
struct SweepPointSummary {
  double density = 0.0;
  double radius = 0.0;
  std::optional<std::size_t> requested_nodes;
  std::size_t replications = 0;
  std::size_t nonempty_replications = 0;
  std::size_t converged_replications = 0;
  double dss_mean_rate_bps = 0.0;
  double greedy_mean_rate_bps = 0.0;
  std::optional<double> dss_fairness;
  std::optional<double> greedy_fairness;
  /// Mean over replications of the per-replication fairness difference.
  std::optional<double> fairness_abs_delta;
  double dss_mean_se = 0.0;
  double greedy_mean_se = 0.0;
  double dss_ase = 0.0;
  double greedy_ase = 0.0;
  std::optional<double> mean_rate_improvement_pct;
  std::optional<double> ase_improvement_pct;
  std::optional<double> se_improvement_pct;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // deterministic order; DSS row before greedy
  std::vector<SweepPointSummary> points;
};

/// Work items run in parallel; results are independent of the thread count.
SweepResult run_synthetic_sweep(const SweepSpec& spec);

struct CellRow {
  std::size_t row = 0;
  std::size_t col = 0;
  std::size_t node_count = 0;
  double area_km2 = 0.0;
  std::optional<double> mean_nn_distance_m;
  std::optional<MetricReport> greedy;
  std::optional<MetricReport> dss;
  Improvement improvement;
  std::int64_t triggers = 0;
  bool converged = true;
};

struct GeoResult {
  std::size_t total_nodes = 0;
  Region frame;
  std::vector<CellRow> cells;  // row-major
};

/// Each non-empty cell is simulated on its own with the DSS seed derived
/// from (sim.seed, cell index). Throws on an empty node set.
GeoResult run_geo_analysis(const NodeSet& nodes, std::size_t rows, std::size_t cols,
                           const RadioConfig& radio, const SimConfig& sim,
                           std::size_t ccdf_points = 50);

GeoResult run_geo_analysis(const std::filesystem::path& dataset, CsvMode mode, std::size_t rows,
                           std::size_t cols, const RadioConfig& radio, const SimConfig& sim,
                           std::size_t ccdf_points = 50);

struct CellSelector {
  std::size_t rows = 1;
  std::size_t cols = 1;
  std::size_t row = 0;
  std::size_t col = 0;
};

using NodeSelection = std::variant<CellSelector, std::vector<NodeId>>;

struct SampleBundle {
  std::vector<NodeId> source_ids;  // ids in the full dataset
  NodeSet nodes;                   // re-indexed selection
  InterferenceGraph graph;
  NetworkEvaluation eval;
  BoxStats greedy_box;
  BoxStats dss_box;
};

/// Throws std::invalid_argument when the selection matches no node.
SampleBundle run_sample_network(const NodeSet& all, const NodeSelection& selection,
                                const RadioConfig& radio, const SimConfig& sim,
                                std::size_t ccdf_points = 50, const TraceSink& trace = {});

/// Cell whose node count is closest to `target` (ties: lowest index).
std::optional<CellSelector> cell_closest_to(const NodeSet& nodes, std::size_t rows,
                                            std::size_t cols, std::size_t target);

}  // namespace dss
