#pragma once

#include <span>
#include <vector>

#include "dss/interference_graph.hpp"
#include "dss/network_model.hpp"

namespace dss {

enum class Scope {
  Local,   // interferers restricted to graph neighbours
  Global,  // every other node in the network
};

/// Snapshot of who occupies what. Holds references; the referenced nodes,
/// graph and radio config must outlive it.
class NetworkState {
 public:
  NetworkState(const NodeSet& nodes, const InterferenceGraph& graph, const RadioConfig& radio,
               std::vector<Sbos> sbos);
  /// Every node starts with the same occupation.
  NetworkState(const NodeSet& nodes, const InterferenceGraph& graph, const RadioConfig& radio,
               bool all_occupied);

  const NodeSet& nodes() const { return *nodes_; }
  const InterferenceGraph& graph() const { return *graph_; }
  const RadioConfig& radio() const { return *radio_; }
  std::size_t size() const { return sbos_.size(); }

  const Sbos& sbos(NodeId v) const { return sbos_[v]; }
  const std::vector<Sbos>& all_sbos() const { return sbos_; }
  void set_sbos(NodeId v, Sbos b);

 private:
  const NodeSet* nodes_;
  const InterferenceGraph* graph_;
  const RadioConfig* radio_;
  std::vector<Sbos> sbos_;
};

/// Received power at the reference user, P_T * g(d_ref).
double signal_power(const RadioConfig& radio);

/// Per-band interference power at v from nodes occupying each band.
std::vector<double> interference_profile(NodeId v, const NetworkState& state, Scope scope);

/// Sum over occupied bands of W log2(1 + signal / (n0 + I_k)).
double rate_from_interference(const Sbos& b, std::span<const double> interference,
                              const RadioConfig& radio);

double sinr(NodeId v, std::size_t k, const NetworkState& state, Scope scope);

/// Shannon rate of v if it used occupation b, in bits/s.
double node_rate(NodeId v, const Sbos& b, const NetworkState& state, Scope scope);

/// What v can estimate from its neighbours' occupation alone.
double estimate_qos(NodeId v, const Sbos& b, const NetworkState& state);

/// Interference-free rate over `bands` sub-bands.
double interference_free_rate(const RadioConfig& radio, std::size_t bands);

/// Global-scope rate of every node under its own current SBOS. Parallel over
/// nodes; each node's sums run in id order so the output matches the serial
/// version bit for bit.
std::vector<double> global_rates(const NetworkState& state);
std::vector<double> global_rates_serial(const NetworkState& state);

}  // namespace dss
