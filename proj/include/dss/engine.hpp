#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dss/interference_graph.hpp"
#include "dss/network_model.hpp"
#include "dss/radio_link.hpp"

namespace dss {

/// Neighbour votes per sub-band. Positive means neighbours occupy it.
struct VoteVector {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t k) const { return values[k]; }
  bool operator==(const VoteVector&) const = default;
};

/// Minimum datarate each node must reach before it stops taking bands.
struct Thresholds {
  std::vector<double> per_node;  // bits/s

  std::size_t size() const { return per_node.size(); }
  double operator[](NodeId v) const { return per_node[v]; }
};

struct TriggerEvent {
  double time = 0.0;
  NodeId node = 0;
};

/// Weighted sum of neighbour SBOS.
VoteVector tally_votes(NodeId v, const NetworkState& state);

/// Occupy every band whose vote is <= 0.
Sbos social_decision(const VoteVector& votes);

struct Escalation {
  Sbos sbos;
  /// Bands taken by the selfish loop, in order.
  std::vector<std::size_t> order;
  double estimated_rate = 0.0;
};

/// Selfish loop: while the local estimate is below `threshold` and a band is
/// free, take the free band with the smallest positive vote (lowest index on
/// ties) and mark its vote -1. If no free band has a positive vote, free
/// bands are taken in index order.
Escalation selfish_escalation(NodeId v, Sbos social, VoteVector votes, const NetworkState& state,
                              double threshold);

/// Same loop against a precomputed local interference profile.
Escalation selfish_escalation(Sbos social, VoteVector votes, std::span<const double> interference,
                              const RadioConfig& radio, double threshold);

struct Decision {
  VoteVector votes;
  Sbos social;
  Escalation result;
};

/// Full decision for node v against the current snapshot; does not modify it.
Decision decide(NodeId v, const NetworkState& state, double threshold);

/// Runs the decision and writes v's new SBOS into the state. Returns true
/// when the SBOS changed.
bool on_trigger(NodeId v, NetworkState& state, double threshold, Decision* out = nullptr);

struct TraceRecord {
  double time_s = 0.0;
  NodeId node = 0;
  std::string sbos_bits;
  double estimated_rate_bps = 0.0;
};

using TraceSink = std::function<void(const TraceRecord&)>;

/// Poisson-clock simulation. The N per-node clocks are realised as one
/// exponential clock of rate N * clock_rate with a uniformly chosen node;
/// decisions execute one at a time. Stops at max_sim_time or once the
/// window of consecutive unchanged triggers is reached and every node has
/// been re-evaluated since the last change.
AllocationResult run_dss(const NodeSet& nodes, const InterferenceGraph& graph,
                         const RadioConfig& radio, const SimConfig& sim,
                         const Thresholds& thresholds, const TraceSink& trace = {});

/// Every node occupies every band.
AllocationResult run_greedy(const NodeSet& nodes, const InterferenceGraph& graph,
                            const RadioConfig& radio);

Thresholds thresholds_from_greedy(const AllocationResult& greedy, double factor = 1.0);

}  // namespace dss
