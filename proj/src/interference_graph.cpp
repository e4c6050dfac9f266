#include "dss/interference_graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "dss/spatial_hash.hpp"

namespace dss {

double path_gain(double d, const RadioConfig& radio) {
  return std::pow(std::max(d, radio.d_min), -radio.alpha);
}

double edge_weight(double d, const RadioConfig& radio) { return path_gain(d, radio); }

InterferenceGraph::InterferenceGraph(std::vector<std::vector<Neighbor>> adjacency)
    : adjacency_(std::move(adjacency)) {
  for (NodeId v = 0; v < adjacency_.size(); ++v) {
    auto& list = adjacency_[v];
    std::sort(list.begin(), list.end(), [](const Neighbor& a, const Neighbor& b) { return a.id < b.id; });
    for (const auto& nb : list) {
      if (nb.id >= adjacency_.size() || nb.id == v)
        throw std::invalid_argument("invalid neighbour id in adjacency");
      if (!(nb.weight > 0.0)) throw std::invalid_argument("edge weights must be > 0");
      radius_ = std::max(radius_, nb.distance);
    }
  }
}

std::size_t InterferenceGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& list : adjacency_) twice += list.size();
  return twice / 2;
}

InterferenceGraph InterferenceGraph::scaled(double c) const {
  if (!(c > 0.0)) throw std::invalid_argument("weight scale must be > 0");
  InterferenceGraph out = *this;
  for (auto& list : out.adjacency_)
    for (auto& nb : list) nb.weight *= c;
  return out;
}

InterferenceGraph build_graph_serial(const NodeSet& nodes, double r_n, const RadioConfig& radio) {
  if (!(r_n > 0.0)) throw std::invalid_argument("R_N must be > 0");
  InterferenceGraph g;
  g.radius_ = r_n;
  g.adjacency_.resize(nodes.size());
  for (NodeId v = 0; v < nodes.size(); ++v)
    for (NodeId u = 0; u < nodes.size(); ++u) {
      if (u == v) continue;
      const double d = distance(nodes.position(v), nodes.position(u));
      if (d <= r_n) g.adjacency_[v].push_back({u, d, edge_weight(d, radio)});
    }
  return g;
}

InterferenceGraph build_graph(const NodeSet& nodes, double r_n, const RadioConfig& radio) {
  if (!(r_n > 0.0)) throw std::invalid_argument("R_N must be > 0");
  InterferenceGraph g;
  g.radius_ = r_n;
  g.adjacency_.resize(nodes.size());
  if (nodes.empty()) return g;

  const SpatialHash hash(nodes, r_n);
  const auto reach = static_cast<std::ptrdiff_t>(std::ceil(r_n / hash.cell_size()));
  const auto n = static_cast<std::ptrdiff_t>(nodes.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t vi = 0; vi < n; ++vi) {
    const auto v = static_cast<NodeId>(vi);
    const Point p = nodes.position(v);
    const auto cx = hash.col_of(p.x);
    const auto cy = hash.row_of(p.y);
    auto& list = g.adjacency_[v];
    for (std::ptrdiff_t dy = -reach; dy <= reach; ++dy)
      for (std::ptrdiff_t dx = -reach; dx <= reach; ++dx)
        hash.for_bucket(cx + dx, cy + dy, [&](NodeId u) {
          if (u == v) return;
          // Same argument order as the pairwise scan so distances match bitwise.
          const double d = distance(p, nodes.position(u));
          if (d <= r_n) list.push_back({u, d, edge_weight(d, radio)});
        });
    std::sort(list.begin(), list.end(), [](const Neighbor& a, const Neighbor& b) { return a.id < b.id; });
  }
  return g;
}

void write_edges_csv(const std::filesystem::path& path, const InterferenceGraph& graph) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.precision(17);
  out << "v,v_prime,d_m,w\n";
  for (NodeId v = 0; v < graph.size(); ++v)
    for (const auto& nb : graph.neighbors(v))
      if (v < nb.id) out << v << ',' << nb.id << ',' << nb.distance << ',' << nb.weight << '\n';
}

}  // namespace dss
