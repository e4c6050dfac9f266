#include "dss/report_io.hpp"

#include <charconv>
#include <fstream>
#include <memory>
#include <stdexcept>

namespace dss {

using nlohmann::json;

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

json box_json(const BoxStats& b) {
  return json{{"min", b.min}, {"q1", b.q1}, {"median", b.median},
              {"q3", b.q3},   {"max", b.max}, {"mean", b.mean}};
}

}  // namespace

json to_json(const MetricReport& m) {
  json ccdf = json::array();
  for (const auto& p : m.ccdf) ccdf.push_back({p.threshold_bps, p.coverage});
  return json{{"node_count", m.node_count},
              {"mean_rate_bps", m.mean_rate_bps},
              {"fairness_index", opt_json(m.fairness_index)},
              {"mean_se_bps_per_hz", m.mean_se_bps_per_hz},
              {"ase_bps_per_hz_per_km2", opt_json(m.ase_bps_per_hz_per_km2)},
              {"ccdf", ccdf}};
}

json to_json(const Improvement& imp) {
  return json{{"mean_rate_pct", opt_json(imp.mean_rate_pct)},
              {"fairness_pct", opt_json(imp.fairness_pct)},
              {"fairness_abs", opt_json(imp.fairness_abs)},
              {"mean_se_pct", opt_json(imp.mean_se_pct)},
              {"ase_pct", opt_json(imp.ase_pct)}};
}

void write_sweep_csv(const std::filesystem::path& path, const SweepResult& sweep) {
  auto out = open_out(path);
  out << "density_per_km2,radius_m,requested_nodes,replication,scheme,node_count,area_km2,"
         "mean_rate_bps,mean_rate_mbps,fairness_index,mean_se_bps_per_hz,"
         "ase_bps_per_hz_per_km2,triggers,converged\n";
  for (const auto& r : sweep.rows) {
    out << format_number(r.density) << ',' << format_number(r.radius) << ','
        << (r.requested_nodes ? std::to_string(*r.requested_nodes) : "") << ',' << r.replication
        << ',' << to_string(r.scheme) << ',' << r.node_count << ',' << format_number(r.area_km2) << ',';
    if (r.report) {
      out << format_number(r.report->mean_rate_bps) << ','
          << format_number(r.report->mean_rate_bps * 1e-6) << ',' << opt(r.report->fairness_index)
          << ',' << format_number(r.report->mean_se_bps_per_hz) << ','
          << opt(r.report->ase_bps_per_hz_per_km2);
    } else {
      out << ",,,,";
    }
    out << ',' << r.triggers << ',' << (r.converged ? 1 : 0) << '\n';
  }
}

json sweep_summary(const SweepResult& sweep) {
  json points = json::array();
  for (const auto& p : sweep.points) {
    points.push_back(json{
        {"density_per_km2", p.density},
        {"radius_m", p.radius},
        {"requested_nodes", p.requested_nodes ? json(*p.requested_nodes) : json(nullptr)},
        {"replications", p.replications},
        {"nonempty_replications", p.nonempty_replications},
        {"converged_replications", p.converged_replications},
        {"dss", {{"mean_rate_bps", p.dss_mean_rate_bps},
                 {"fairness_index", opt_json(p.dss_fairness)},
                 {"mean_se_bps_per_hz", p.dss_mean_se},
                 {"ase_bps_per_hz_per_km2", p.dss_ase}}},
        {"greedy", {{"mean_rate_bps", p.greedy_mean_rate_bps},
                    {"fairness_index", opt_json(p.greedy_fairness)},
                    {"mean_se_bps_per_hz", p.greedy_mean_se},
                    {"ase_bps_per_hz_per_km2", p.greedy_ase}}},
        {"improvement", {{"mean_rate_pct", opt_json(p.mean_rate_improvement_pct)},
                         {"mean_se_pct", opt_json(p.se_improvement_pct)},
                         {"ase_pct", opt_json(p.ase_improvement_pct)},
                         {"fairness_abs", opt_json(p.fairness_abs_delta)}}}});
  }
  return json{{"kind", "sweep"}, {"rows", sweep.rows.size()}, {"points", points}};
}

void write_cells_csv(const std::filesystem::path& path, const GeoResult& geo) {
  // Long format: two rows per cell (dss, greedy). Cell-level columns and the
  // improvement of DSS over greedy repeat on both rows.
  auto out = open_out(path);
  out << "row,col,scheme,node_count,area_km2,mean_nn_distance_m,"
         "mean_rate_bps,mean_rate_mbps,fairness_index,mean_se_bps_per_hz,ase_bps_per_hz_per_km2,"
         "rate_improvement_pct,fairness_improvement_abs,fairness_improvement_pct,"
         "se_improvement_pct,ase_improvement_pct,triggers,converged\n";
  for (const auto& c : geo.cells) {
    for (const auto scheme : {Scheme::DSS, Scheme::Greedy}) {
      const auto& m = scheme == Scheme::DSS ? c.dss : c.greedy;
      out << c.row << ',' << c.col << ',' << to_string(scheme) << ',' << c.node_count << ','
          << format_number(c.area_km2) << ',' << opt(c.mean_nn_distance_m) << ',';
      if (m) {
        out << format_number(m->mean_rate_bps) << ',' << format_number(m->mean_rate_bps * 1e-6) << ','
            << opt(m->fairness_index) << ',' << format_number(m->mean_se_bps_per_hz) << ','
            << opt(m->ase_bps_per_hz_per_km2) << ',';
      } else {
        out << ",,,,,";
      }
      const auto& i = c.improvement;
      out << opt(i.mean_rate_pct) << ',' << opt(i.fairness_abs) << ',' << opt(i.fairness_pct) << ','
          << opt(i.mean_se_pct) << ',' << opt(i.ase_pct) << ','
          << (scheme == Scheme::DSS ? c.triggers : 0) << ',' << (c.converged ? 1 : 0) << '\n';
    }
  }
}

json geo_summary(const GeoResult& geo) {
  std::size_t cell_nodes = 0, nonempty = 0, converged = 0;
  double rate_sum = 0, ase_sum = 0, fair_sum = 0;
  std::size_t rate_n = 0, ase_n = 0, fair_n = 0;
  for (const auto& c : geo.cells) {
    cell_nodes += c.node_count;
    if (c.node_count == 0) continue;
    ++nonempty;
    if (c.converged) ++converged;
    if (c.improvement.mean_rate_pct) { rate_sum += *c.improvement.mean_rate_pct; ++rate_n; }
    if (c.improvement.ase_pct) { ase_sum += *c.improvement.ase_pct; ++ase_n; }
    if (c.improvement.fairness_abs) { fair_sum += *c.improvement.fairness_abs; ++fair_n; }
  }
  auto avg = [](double s, std::size_t n) { return n ? json(s / static_cast<double>(n)) : json(nullptr); };
  return json{{"kind", "geo"},
              {"total_nodes", geo.total_nodes},
              {"cell_node_sum", cell_nodes},
              {"cells", geo.cells.size()},
              {"nonempty_cells", nonempty},
              {"converged_cells", converged},
              {"frame", {{"x0_m", geo.frame.origin.x}, {"y0_m", geo.frame.origin.y},
                         {"width_m", geo.frame.width}, {"height_m", geo.frame.height}}},
              {"mean_cell_rate_improvement_pct", avg(rate_sum, rate_n)},
              {"mean_cell_ase_improvement_pct", avg(ase_sum, ase_n)},
              {"mean_cell_fairness_improvement_abs", avg(fair_sum, fair_n)}};
}

void write_sample_rates_csv(const std::filesystem::path& path, const SampleBundle& b,
                            const NodeSet& all) {
  auto out = open_out(path);
  out << "node_id,source_id,x_m,y_m,greedy_rate_bps,dss_rate_bps,greedy_rate_mbps,dss_rate_mbps,"
         "rate_improvement_pct,dss_sbos\n";
  for (NodeId v = 0; v < b.nodes.size(); ++v) {
    const double g = b.eval.greedy.rate_per_node[v];
    const double d = b.eval.dss.rate_per_node[v];
    const auto& p = all.position(b.source_ids[v]);
    out << v << ',' << b.source_ids[v] << ',' << format_number(p.x) << ',' << format_number(p.y)
        << ',' << format_number(g) << ',' << format_number(d) << ',' << format_number(g * 1e-6) << ','
        << format_number(d * 1e-6) << ',' << opt(percent_change(d, g)) << ','
        << b.eval.dss.sbos_per_node[v].bitstring() << '\n';
  }
}

json sample_summary(const SampleBundle& b) {
  return json{{"kind", "sample"},
              {"node_count", b.nodes.size()},
              {"edge_count", b.graph.edge_count()},
              {"area_km2", b.eval.area_km2},
              {"dss_triggers", b.eval.dss.triggers_executed},
              {"dss_converged", b.eval.dss.converged},
              {"fairness", {{"greedy", opt_json(b.eval.greedy_report.fairness_index)},
                            {"dss", opt_json(b.eval.dss_report.fairness_index)}}},
              {"box_plot_bps", {{"greedy", box_json(b.greedy_box)}, {"dss", box_json(b.dss_box)}}},
              {"greedy", to_json(b.eval.greedy_report)},
              {"dss", to_json(b.eval.dss_report)},
              {"improvement", to_json(b.eval.improvement)}};
}

TraceWriter::TraceWriter(const std::filesystem::path& path)
    : out_(std::make_shared<std::ofstream>(path, std::ios::binary)) {
  if (!*out_) throw std::runtime_error("cannot write " + path.string());
  *out_ << "time_s,node_id,sbos_bitstring,estimated_rate_bps\n";
}

namespace {

void write_trace_row(std::ostream& out, const TraceRecord& r) {
  out << format_number(r.time_s) << ',' << r.node << ',' << r.sbos_bits << ','
      << format_number(r.estimated_rate_bps) << '\n';
}

}  // namespace

void TraceWriter::operator()(const TraceRecord& r) { write_trace_row(*out_, r); }

TraceSink TraceWriter::sink() {
  return [out = out_](const TraceRecord& r) { write_trace_row(*out, r); };
}

void write_json(const std::filesystem::path& path, const json& doc) {
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
}

}  // namespace dss
