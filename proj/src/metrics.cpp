#include "dss/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dss {

double jain_fairness(std::span<const double> rates) {
  if (rates.empty()) throw std::invalid_argument("fairness of an empty rate list");
  double sum = 0.0, sq = 0.0;
  for (double x : rates) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw std::invalid_argument("rates must be finite and >= 0");
    sum += x;
    sq += x * x;
  }
  if (sq == 0.0) throw std::invalid_argument("fairness undefined when every rate is zero");
  const double j = (sum * sum) / (static_cast<double>(rates.size()) * sq);
  // Rounding can push equal rates a hair past 1.
  return std::clamp(j, 1.0 / static_cast<double>(rates.size()), 1.0);
}

double area_spectral_efficiency(const AllocationResult& result, double area_km2,
                                const RadioConfig& radio) {
  if (!(area_km2 > 0.0)) throw std::invalid_argument("area must be > 0");
  const double total = std::accumulate(result.rate_per_node.begin(), result.rate_per_node.end(), 0.0);
  return total / (static_cast<double>(radio.S) * radio.W * area_km2);
}

std::vector<CcdfPoint> rate_ccdf(std::span<const double> rates, std::span<const double> thresholds) {
  if (!std::is_sorted(thresholds.begin(), thresholds.end()))
    throw std::invalid_argument("CCDF thresholds must be ascending");
  std::vector<double> sorted(rates.begin(), rates.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<CcdfPoint> out;
  out.reserve(thresholds.size());
  for (double t : thresholds) {
    double p = 0.0;
    if (!sorted.empty()) {
      const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), t);
      p = static_cast<double>(above) / static_cast<double>(sorted.size());
    }
    out.push_back({t, p});
  }
  return out;
}

std::vector<double> ccdf_grid(double max_rate, std::size_t points) {
  std::vector<double> out;
  if (points == 0) return out;
  if (points == 1) return {0.0};
  out.reserve(points);
  for (std::size_t i = 0; i < points; ++i)
    out.push_back(max_rate * static_cast<double>(i) / static_cast<double>(points - 1));
  return out;
}

MetricReport compute_report(const AllocationResult& result, double area_km2,
                            const RadioConfig& radio, std::span<const double> ccdf_thresholds) {
  MetricReport m;
  const auto& rates = result.rate_per_node;
  m.node_count = rates.size();
  if (!rates.empty()) {
    m.mean_rate_bps = std::accumulate(rates.begin(), rates.end(), 0.0) / static_cast<double>(rates.size());
    m.mean_se_bps_per_hz = m.mean_rate_bps / (static_cast<double>(radio.S) * radio.W);
    if (std::any_of(rates.begin(), rates.end(), [](double r) { return r > 0.0; }))
      m.fairness_index = jain_fairness(rates);
  }
  if (area_km2 > 0.0) m.ase_bps_per_hz_per_km2 = area_spectral_efficiency(result, area_km2, radio);
  m.ccdf = rate_ccdf(rates, ccdf_thresholds);
  return m;
}

std::optional<double> percent_change(std::optional<double> dss, std::optional<double> greedy) {
  if (!dss || !greedy || *greedy == 0.0) return std::nullopt;
  return 100.0 * (*dss - *greedy) / *greedy;
}

Improvement improvement(const MetricReport& dss, const MetricReport& greedy) {
  Improvement out;
  out.mean_rate_pct = percent_change(dss.mean_rate_bps, greedy.mean_rate_bps);
  out.fairness_pct = percent_change(dss.fairness_index, greedy.fairness_index);
  if (dss.fairness_index && greedy.fairness_index)
    out.fairness_abs = *dss.fairness_index - *greedy.fairness_index;
  out.mean_se_pct = percent_change(dss.mean_se_bps_per_hz, greedy.mean_se_bps_per_hz);
  out.ase_pct = percent_change(dss.ase_bps_per_hz_per_km2, greedy.ase_bps_per_hz_per_km2);
  return out;
}

BoxStats box_stats(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("box statistics of an empty list");
  std::sort(values.begin(), values.end());
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  BoxStats s;
  s.min = values.front();
  s.max = values.back();
  s.q1 = quantile(0.25);
  s.median = quantile(0.5);
  s.q3 = quantile(0.75);
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  return s;
}

}  // namespace dss
