// dss: run spectrum-sharing experiments and emit plot-ready CSV/JSON.

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dss/config_io.hpp"
#include "dss/deployment.hpp"
#include "dss/experiments.hpp"
#include "dss/report_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options {
  std::string config;
  std::string dataset;
  std::string mode = "lonlat";
  std::string out = ".";
  std::size_t rows = 50;
  std::size_t cols = 50;
  std::optional<std::uint64_t> seed;
  std::optional<double> r_n;
  std::string cell;
  std::string node_list;
  std::optional<std::size_t> closest_to;
  bool trace = false;
};

dss::ExperimentConfig load(const Options& o) {
  dss::ExperimentConfig cfg = o.config.empty() ? dss::parse_config(json::object()) : dss::load_config(o.config);
  if (o.seed) cfg.sim.seed = cfg.sweep.sim.seed = *o.seed;
  if (o.r_n) {
    cfg.sim.R_N = cfg.sweep.sim.R_N = *o.r_n;
    dss::validate_config(cfg.radio, cfg.sim);
  }
  return cfg;
}

dss::CsvMode csv_mode(const std::string& m) {
  if (m == "lonlat") return dss::CsvMode::LonLat;
  if (m == "xy") return dss::CsvMode::Meters;
  throw std::invalid_argument("unknown --mode '" + m + "' (expected lonlat or xy)");
}

std::vector<std::size_t> parse_list(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    const auto v = std::stoull(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("bad integer '" + item + "'");
    out.push_back(v);
  }
  return out;
}

fs::path prepare_out(const Options& o) {
  fs::path dir(o.out);
  fs::create_directories(dir);
  return dir;
}

dss::NodeSet load_dataset(const Options& o) {
  if (o.dataset.empty()) throw std::invalid_argument("--dataset is required");
  return dss::ingest_ap_csv(o.dataset, csv_mode(o.mode));
}

int cmd_validate(const Options& o) {
  const auto cfg = load(o);
  std::cout << dss::to_json(cfg).dump(2) << '\n';
  return 0;
}

int cmd_sweep(const Options& o) {
  const auto cfg = load(o);
  const auto dir = prepare_out(o);
  const auto result = dss::run_synthetic_sweep(cfg.sweep);
  dss::write_sweep_csv(dir / "sweep.csv", result);
  json summary = dss::sweep_summary(result);
  summary["config"] = dss::to_json(cfg);
  dss::write_json(dir / "summary.json", summary);
  return 0;
}

int cmd_geo(const Options& o) {
  const auto cfg = load(o);
  const auto nodes = load_dataset(o);
  if (nodes.empty()) throw std::invalid_argument("dataset has no access points: " + o.dataset);
  const auto dir = prepare_out(o);
  const auto geo = dss::run_geo_analysis(nodes, o.rows, o.cols, cfg.radio, cfg.sim, cfg.sweep.ccdf_points);
  dss::write_cells_csv(dir / "cells.csv", geo);
  json summary = dss::geo_summary(geo);
  summary["grid"] = {{"rows", o.rows}, {"cols", o.cols}};
  summary["config"] = dss::to_json(cfg);
  dss::write_json(dir / "summary.json", summary);
  return 0;
}

int cmd_sample(const Options& o) {
  const auto cfg = load(o);
  const auto nodes = load_dataset(o);
  dss::NodeSelection selection;
  const int given = !o.cell.empty() + !o.node_list.empty() + o.closest_to.has_value();
  if (given != 1) throw std::invalid_argument("give exactly one of --cell, --nodes, --closest-to");
  if (!o.cell.empty()) {
    const auto rc = parse_list(o.cell);
    if (rc.size() != 2) throw std::invalid_argument("--cell expects ROW,COL");
    selection = dss::CellSelector{o.rows, o.cols, rc[0], rc[1]};
  } else if (!o.node_list.empty()) {
    selection = parse_list(o.node_list);
  } else {
    const auto sel = dss::cell_closest_to(nodes, o.rows, o.cols, *o.closest_to);
    if (!sel) throw std::invalid_argument("selection matches no nodes");
    selection = *sel;
  }

  const auto dir = prepare_out(o);
  std::optional<dss::TraceWriter> trace;
  if (o.trace) trace.emplace(dir / "trace.csv");
  const auto bundle = dss::run_sample_network(nodes, selection, cfg.radio, cfg.sim, cfg.sweep.ccdf_points,
                                              trace ? trace->sink() : dss::TraceSink{});
  dss::write_sample_rates_csv(dir / "sample_rates.csv", bundle, nodes);
  dss::write_edges_csv(dir / "edges.csv", bundle.graph);
  json summary = dss::sample_summary(bundle);
  if (const auto* sel = std::get_if<dss::CellSelector>(&selection))
    summary["cell"] = {{"rows", sel->rows}, {"cols", sel->cols}, {"row", sel->row}, {"col", sel->col}};
  summary["config"] = dss::to_json(cfg);
  dss::write_json(dir / "summary.json", summary);
  return 0;
}

int fail(const std::string& kind, const std::string& message, json details = json::array()) {
  std::cerr << json{{"error", kind}, {"message", message}, {"details", std::move(details)}}.dump() << '\n';
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Democratic spectrum sharing experiments"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "JSON configuration");
    sub->add_option("--seed", o.seed, "Master seed (overrides config)");
  };
  auto add_dataset = [&](CLI::App* sub) {
    sub->add_option("--dataset", o.dataset, "AP location CSV")->required();
    sub->add_option("--mode", o.mode, "Column mode: lonlat or xy")->capture_default_str();
    sub->add_option("--rows", o.rows, "Grid rows")->capture_default_str();
    sub->add_option("--cols", o.cols, "Grid columns")->capture_default_str();
    sub->add_option("--rn", o.r_n, "Neighbourhood radius in metres (overrides config)");
  };
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Output directory")->capture_default_str();
  };

  auto* validate = app.add_subcommand("validate", "Check a configuration and print it resolved");
  add_common(validate);
  auto* sweep = app.add_subcommand("sweep", "Synthetic PPP sweep over density, radius and size");
  add_common(sweep);
  add_out(sweep);
  auto* geo = app.add_subcommand("geo", "Grid-wise analysis of a real AP dataset");
  add_common(geo);
  add_dataset(geo);
  add_out(geo);
  auto* sample = app.add_subcommand("sample", "Detailed run on one cell or node list");
  add_common(sample);
  add_dataset(sample);
  add_out(sample);
  sample->add_option("--cell", o.cell, "ROW,COL within the --rows x --cols grid");
  sample->add_option("--nodes", o.node_list, "Comma-separated dataset node ids");
  sample->add_option("--closest-to", o.closest_to, "Pick the cell whose size is closest to N");
  sample->add_flag("--trace", o.trace, "Write trace.csv with every trigger");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return fail("usage", e.what());
  }

  try {
    if (*validate) return cmd_validate(o);
    if (*sweep) return cmd_sweep(o);
    if (*geo) return cmd_geo(o);
    if (*sample) return cmd_sample(o);
  } catch (const dss::ConfigValidationError& e) {
    json details = json::array();
    for (const auto& err : e.errors()) details.push_back({{"field", err.field}, {"message", err.message}});
    return fail("invalid_config", e.what(), details);
  } catch (const dss::ParseError& e) {
    return fail("parse_error", e.what(), json::array({{{"line", e.line()}}}));
  } catch (const std::exception& e) {
    return fail("runtime_error", e.what());
  }
  return 1;
}
