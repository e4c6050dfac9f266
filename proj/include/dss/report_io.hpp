#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "dss/engine.hpp"
#include "dss/experiments.hpp"
#include "dss/metrics.hpp"

namespace dss {

/// Shortest round-trip decimal form; identical bytes for identical doubles.
std::string format_number(double v);

nlohmann::json to_json(const MetricReport& m);
nlohmann::json to_json(const Improvement& imp);

void write_sweep_csv(const std::filesystem::path& path, const SweepResult& sweep);
nlohmann::json sweep_summary(const SweepResult& sweep);

void write_cells_csv(const std::filesystem::path& path, const GeoResult& geo);
nlohmann::json geo_summary(const GeoResult& geo);

/// Per-node rates of both schemes, with Mbit/s copies and the improvement.
void write_sample_rates_csv(const std::filesystem::path& path, const SampleBundle& bundle,
                            const NodeSet& all);
nlohmann::json sample_summary(const SampleBundle& bundle);

/// Streams (time_s, node_id, sbos_bitstring, estimated_rate_bps).
class TraceWriter {
 public:
  explicit TraceWriter(const std::filesystem::path& path);
  void operator()(const TraceRecord& r);
  TraceSink sink();

 private:
  std::shared_ptr<std::ofstream> out_;
};

void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

}  // namespace dss
