#include "dss/radio_link.hpp"

#include <cmath>
#include <stdexcept>

namespace dss {

NetworkState::NetworkState(const NodeSet& nodes, const InterferenceGraph& graph,
                           const RadioConfig& radio, std::vector<Sbos> sbos)
    : nodes_(&nodes), graph_(&graph), radio_(&radio), sbos_(std::move(sbos)) {
  if (sbos_.size() != graph.size() || nodes.size() != graph.size())
    throw std::invalid_argument("SBOS count, node count and graph size must agree");
  for (const auto& b : sbos_)
    if (b.size() != radio.bands()) throw std::invalid_argument("SBOS length must equal S");
}

NetworkState::NetworkState(const NodeSet& nodes, const InterferenceGraph& graph,
                           const RadioConfig& radio, bool all_occupied)
    : NetworkState(nodes, graph, radio,
                   std::vector<Sbos>(graph.size(), all_occupied ? Sbos::all_occupied(radio.bands())
                                                                : Sbos(radio.bands()))) {}

void NetworkState::set_sbos(NodeId v, Sbos b) {
  if (b.size() != radio_->bands()) throw std::invalid_argument("SBOS length must equal S");
  sbos_[v] = std::move(b);
}

double signal_power(const RadioConfig& radio) { return radio.P_T * path_gain(radio.d_ref, radio); }

namespace {

void add_interferer(std::vector<double>& acc, const Sbos& b, double power) {
  for (std::size_t k = 0; k < acc.size(); ++k)
    if (b.occupied(k)) acc[k] += power;
}

}  // namespace

std::vector<double> interference_profile(NodeId v, const NetworkState& state, Scope scope) {
  const auto& radio = state.radio();
  std::vector<double> acc(radio.bands(), 0.0);
  if (scope == Scope::Local) {
    for (const auto& nb : state.graph().neighbors(v))
      add_interferer(acc, state.sbos(nb.id), radio.P_T * path_gain(nb.distance, radio));
  } else {
    const Point p = state.nodes().position(v);
    for (NodeId u = 0; u < state.size(); ++u) {
      if (u == v) continue;
      const auto& b = state.sbos(u);
      if (b.occupied_count() == 0) continue;
      add_interferer(acc, b, radio.P_T * path_gain(distance(p, state.nodes().position(u)), radio));
    }
  }
  return acc;
}

double rate_from_interference(const Sbos& b, std::span<const double> interference,
                              const RadioConfig& radio) {
  const double sig = signal_power(radio);
  const double n0 = radio.n0();
  double rate = 0.0;
  for (std::size_t k = 0; k < b.size(); ++k)
    if (b.occupied(k)) rate += radio.W * std::log2(1.0 + sig / (n0 + interference[k]));
  return rate;
}

double sinr(NodeId v, std::size_t k, const NetworkState& state, Scope scope) {
  const auto& radio = state.radio();
  if (k >= radio.bands()) throw std::out_of_range("sub-band index out of range");
  const auto profile = interference_profile(v, state, scope);
  return signal_power(radio) / (radio.n0() + profile[k]);
}

double node_rate(NodeId v, const Sbos& b, const NetworkState& state, Scope scope) {
  return rate_from_interference(b, interference_profile(v, state, scope), state.radio());
}

double estimate_qos(NodeId v, const Sbos& b, const NetworkState& state) {
  return node_rate(v, b, state, Scope::Local);
}

double interference_free_rate(const RadioConfig& radio, std::size_t bands) {
  return static_cast<double>(bands) * radio.W * std::log2(1.0 + signal_power(radio) / radio.n0());
}

std::vector<double> global_rates_serial(const NetworkState& state) {
  const auto& radio = state.radio();
  const auto& nodes = state.nodes();
  const double sig = signal_power(radio);
  std::vector<double> out(state.size(), 0.0);
  for (NodeId v = 0; v < state.size(); ++v) {
    for (std::size_t k = 0; k < radio.bands(); ++k) {
      if (!state.sbos(v).occupied(k)) continue;
      double interference = 0.0;
      for (NodeId u = 0; u < state.size(); ++u)
        if (u != v && state.sbos(u).occupied(k))
          interference += radio.P_T * path_gain(distance(nodes.position(v), nodes.position(u)), radio);
      out[v] += radio.W * std::log2(1.0 + sig / (radio.n0() + interference));
    }
  }
  return out;
}

std::vector<double> global_rates(const NetworkState& state) {
  std::vector<double> out(state.size());
  const auto n = static_cast<std::ptrdiff_t>(state.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto v = static_cast<NodeId>(i);
    out[v] = node_rate(v, state.sbos(v), state, Scope::Global);
  }
  return out;
}

}  // namespace dss
