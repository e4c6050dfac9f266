#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "dss/network_model.hpp"

namespace dss {

struct Neighbor {
  NodeId id = 0;
  double distance = 0.0;  // m, AP to AP
  double weight = 0.0;    // voting weight

  bool operator==(const Neighbor&) const = default;
};

/// Power-law path gain max(d, d_min)^-alpha.
double path_gain(double d, const RadioConfig& radio);

/// Voting weight of an edge of length d. Same law as path_gain.
double edge_weight(double d, const RadioConfig& radio);

/// Symmetric weighted neighbourhood graph. Neighbour lists are sorted by id.
class InterferenceGraph {
 public:
  InterferenceGraph() = default;
  explicit InterferenceGraph(std::vector<std::vector<Neighbor>> adjacency);

  std::size_t size() const { return adjacency_.size(); }
  std::span<const Neighbor> neighbors(NodeId v) const { return adjacency_[v]; }
  std::size_t edge_count() const;
  double radius() const { return radius_; }

  /// Copy with every weight multiplied by c (distances unchanged).
  InterferenceGraph scaled(double c) const;

  bool operator==(const InterferenceGraph&) const = default;

 private:
  friend InterferenceGraph build_graph(const NodeSet&, double, const RadioConfig&);
  friend InterferenceGraph build_graph_serial(const NodeSet&, double, const RadioConfig&);

  std::vector<std::vector<Neighbor>> adjacency_;
  double radius_ = 0.0;
};

/// Edge (v, v') iff v != v' and distance <= r_n. Uses a bucket grid with
/// cell size r_n; neighbour search runs in parallel over nodes.
InterferenceGraph build_graph(const NodeSet& nodes, double r_n, const RadioConfig& radio);

/// O(N^2) pairwise scan producing the same graph.
InterferenceGraph build_graph_serial(const NodeSet& nodes, double r_n, const RadioConfig& radio);

/// Edge list (v, v', d_m, w) with v < v'.
void write_edges_csv(const std::filesystem::path& path, const InterferenceGraph& graph);

}  // namespace dss
