#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "dss/network_model.hpp"

namespace dss {

/// Uniform bucket grid over a node set in CSR layout. Bucket members are in
/// increasing node id.
class SpatialHash {
 public:
  SpatialHash(const NodeSet& nodes, double cell_size) : cell_(cell_size) {
    if (nodes.empty()) return;
    min_x_ = max_x_ = nodes.position(0).x;
    min_y_ = max_y_ = nodes.position(0).y;
    for (const auto& n : nodes) {
      min_x_ = std::min(min_x_, n.position.x);
      max_x_ = std::max(max_x_, n.position.x);
      min_y_ = std::min(min_y_, n.position.y);
      max_y_ = std::max(max_y_, n.position.y);
    }
    // Cap the bucket count; a very small cell over a large box would
    // otherwise allocate far more buckets than nodes.
    const double span = std::max(max_x_ - min_x_, max_y_ - min_y_);
    const double max_cells = 4.0 * static_cast<double>(nodes.size()) + 16.0;
    if (!(cell_ > 0.0) || span / cell_ > max_cells) cell_ = span > 0.0 ? span / max_cells : 1.0;
    cols_ = static_cast<std::ptrdiff_t>(std::floor((max_x_ - min_x_) / cell_)) + 1;
    rows_ = static_cast<std::ptrdiff_t>(std::floor((max_y_ - min_y_) / cell_)) + 1;

    std::vector<std::size_t> counts(static_cast<std::size_t>(rows_ * cols_) + 1, 0);
    cell_of_.resize(nodes.size());
    for (const auto& n : nodes) {
      const std::size_t c = index(col_of(n.position.x), row_of(n.position.y));
      cell_of_[n.id] = c;
      ++counts[c + 1];
    }
    for (std::size_t i = 1; i < counts.size(); ++i) counts[i] += counts[i - 1];
    start_ = counts;
    items_.resize(nodes.size());
    for (const auto& n : nodes) items_[counts[cell_of_[n.id]]++] = n.id;
  }

  double cell_size() const { return cell_; }
  std::ptrdiff_t rows() const { return rows_; }
  std::ptrdiff_t cols() const { return cols_; }

  std::ptrdiff_t col_of(double x) const {
    return std::clamp<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(std::floor((x - min_x_) / cell_)), 0, cols_ - 1);
  }
  std::ptrdiff_t row_of(double y) const {
    return std::clamp<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(std::floor((y - min_y_) / cell_)), 0, rows_ - 1);
  }

  /// Calls f(id) for every node in bucket (col, row); out-of-range is a no-op.
  template <class F>
  void for_bucket(std::ptrdiff_t col, std::ptrdiff_t row, F&& f) const {
    if (col < 0 || row < 0 || col >= cols_ || row >= rows_) return;
    const std::size_t c = index(col, row);
    for (std::size_t i = start_[c]; i < start_[c + 1]; ++i) f(items_[i]);
  }

 private:
  std::size_t index(std::ptrdiff_t col, std::ptrdiff_t row) const {
    return static_cast<std::size_t>(row * cols_ + col);
  }

  double cell_;
  double min_x_ = 0, max_x_ = 0, min_y_ = 0, max_y_ = 0;
  std::ptrdiff_t rows_ = 0, cols_ = 0;
  std::vector<std::size_t> cell_of_;
  std::vector<std::size_t> start_;
  std::vector<NodeId> items_;
};

}  // namespace dss
