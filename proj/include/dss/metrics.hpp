#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dss/network_model.hpp"

namespace dss {

struct CcdfPoint {
  double threshold_bps = 0.0;
  double coverage = 0.0;  // P(rate > threshold)

  bool operator==(const CcdfPoint&) const = default;
};

struct MetricReport {
  std::size_t node_count = 0;
  double mean_rate_bps = 0.0;
  /// Unset when every rate is zero or the network is empty.
  std::optional<double> fairness_index;
  double mean_se_bps_per_hz = 0.0;
  /// Unset when the evaluation area is degenerate (zero extent).
  std::optional<double> ase_bps_per_hz_per_km2;
  std::vector<CcdfPoint> ccdf;

  bool operator==(const MetricReport&) const = default;
};

/// (sum x)^2 / (n sum x^2). Throws std::invalid_argument on an empty input,
/// a negative rate, or all-zero rates.
double jain_fairness(std::span<const double> rates);

/// Sum of rates over S * W * area. Throws on a non-positive area.
double area_spectral_efficiency(const AllocationResult& result, double area_km2,
                                const RadioConfig& radio);

/// Empirical P(rate > t) at each threshold. Thresholds must be ascending.
std::vector<CcdfPoint> rate_ccdf(std::span<const double> rates, std::span<const double> thresholds);

/// `points` evenly spaced thresholds from 0 to max_rate inclusive.
std::vector<double> ccdf_grid(double max_rate, std::size_t points);

MetricReport compute_report(const AllocationResult& result, double area_km2,
                            const RadioConfig& radio, std::span<const double> ccdf_thresholds);

/// Relative change 100 (dss - greedy) / greedy; unset when greedy is zero
/// or either side is undefined.
std::optional<double> percent_change(std::optional<double> dss, std::optional<double> greedy);

struct Improvement {
  std::optional<double> mean_rate_pct;
  std::optional<double> fairness_pct;
  std::optional<double> fairness_abs;
  std::optional<double> mean_se_pct;
  std::optional<double> ase_pct;

  bool operator==(const Improvement&) const = default;
};

Improvement improvement(const MetricReport& dss, const MetricReport& greedy);

struct BoxStats {
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0, mean = 0;
};

/// Five-number summary with linearly interpolated quartiles. Throws on empty.
BoxStats box_stats(std::vector<double> values);

}  // namespace dss
