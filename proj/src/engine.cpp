#include "dss/engine.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "dss/rng.hpp"

namespace dss {

VoteVector tally_votes(NodeId v, const NetworkState& state) {
  VoteVector votes{std::vector<double>(state.radio().bands(), 0.0)};
  for (const auto& nb : state.graph().neighbors(v)) {
    const auto& b = state.sbos(nb.id);
    for (std::size_t k = 0; k < votes.size(); ++k) votes.values[k] += nb.weight * b[k];
  }
  return votes;
}

Sbos social_decision(const VoteVector& votes) {
  Sbos b(votes.size());
  // sgn(0) is taken as -1, so unopposed bands are occupied.
  for (std::size_t k = 0; k < votes.size(); ++k) b.set_occupied(k, votes[k] <= 0.0);
  return b;
}

Escalation selfish_escalation(Sbos social, VoteVector votes, std::span<const double> interference,
                              const RadioConfig& radio, double threshold) {
  if (std::isnan(threshold)) throw std::invalid_argument("threshold must not be NaN");
  if (social.size() != votes.size()) throw std::invalid_argument("SBOS and votes differ in length");
  Escalation out{std::move(social), {}, 0.0};
  auto& b = out.sbos;
  out.estimated_rate = rate_from_interference(b, interference, radio);
  while (out.estimated_rate < threshold && !b.all_occupied()) {
    std::size_t pick = b.size();
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (b.occupied(k) || !(votes.values[k] > 0.0)) continue;
      if (pick == b.size() || votes.values[k] < votes.values[pick]) pick = k;
    }
    if (pick == b.size()) {
      for (std::size_t k = 0; k < b.size(); ++k)
        if (!b.occupied(k)) {
          pick = k;
          break;
        }
    }
    b.set_occupied(pick, true);
    votes.values[pick] = -1.0;
    out.order.push_back(pick);
    out.estimated_rate = rate_from_interference(b, interference, radio);
  }
  return out;
}

Escalation selfish_escalation(NodeId v, Sbos social, VoteVector votes, const NetworkState& state,
                              double threshold) {
  const auto profile = interference_profile(v, state, Scope::Local);
  return selfish_escalation(std::move(social), std::move(votes), profile, state.radio(), threshold);
}

Decision decide(NodeId v, const NetworkState& state, double threshold) {
  Decision d;
  d.votes = tally_votes(v, state);
  d.social = social_decision(d.votes);
  d.result = selfish_escalation(v, d.social, d.votes, state, threshold);
  return d;
}

bool on_trigger(NodeId v, NetworkState& state, double threshold, Decision* out) {
  Decision d = decide(v, state, threshold);
  const bool changed = !(d.result.sbos == state.sbos(v));
  state.set_sbos(v, d.result.sbos);
  if (out) *out = std::move(d);
  return changed;
}

namespace {

AllocationResult finish(Scheme scheme, const NetworkState& state) {
  AllocationResult r;
  r.scheme = scheme;
  r.sbos_per_node = state.all_sbos();
  r.rate_per_node = global_rates(state);
  const double total_bw = static_cast<double>(state.radio().S) * state.radio().W;
  r.se_per_node.reserve(r.rate_per_node.size());
  for (double rate : r.rate_per_node) r.se_per_node.push_back(rate / total_bw);
  r.triggers_per_node.assign(state.size(), 0);
  return r;
}

}  // namespace

AllocationResult run_dss(const NodeSet& nodes, const InterferenceGraph& graph,
                         const RadioConfig& radio, const SimConfig& sim,
                         const Thresholds& thresholds, const TraceSink& trace) {
  const std::size_t n = nodes.size();
  if (thresholds.size() != n) throw std::invalid_argument("threshold count must equal node count");
  NetworkState state(nodes, graph, radio, sim.initial_occupied);
  std::vector<std::int64_t> per_node(n, 0);
  std::int64_t triggers = 0;
  bool converged = n == 0;
  double t = 0.0;

  if (n > 0) {
    Rng rng(sim.seed);
    std::exponential_distribution<double> gap(static_cast<double>(n) * sim.clock_rate);
    std::uniform_int_distribution<NodeId> pick(0, n - 1);
    const std::int64_t window = sim.window_for(n);
    std::int64_t unchanged = 0;
    std::vector<char> seen(n, 0);
    std::size_t seen_count = 0;
    Decision d;
    while (true) {
      const double next = t + gap(rng);
      if (next > sim.max_sim_time) break;
      t = next;
      const NodeId v = pick(rng);
      ++triggers;
      ++per_node[v];
      const bool changed = on_trigger(v, state, thresholds[v], trace ? &d : nullptr);
      if (trace) trace({t, v, state.sbos(v).bitstring(), d.result.estimated_rate});
      if (changed) {
        unchanged = 0;
        std::fill(seen.begin(), seen.end(), 0);
        seen_count = 0;
        continue;
      }
      ++unchanged;
      if (!seen[v]) {
        seen[v] = 1;
        ++seen_count;
      }
      if (unchanged >= window && seen_count == n) {
        converged = true;
        break;
      }
    }
  }

  AllocationResult r = finish(Scheme::DSS, state);
  r.triggers_executed = triggers;
  r.triggers_per_node = std::move(per_node);
  r.converged = converged;
  r.sim_time = t;
  return r;
}

AllocationResult run_greedy(const NodeSet& nodes, const InterferenceGraph& graph,
                            const RadioConfig& radio) {
  const NetworkState state(nodes, graph, radio, true);
  AllocationResult r = finish(Scheme::Greedy, state);
  r.converged = true;
  return r;
}

Thresholds thresholds_from_greedy(const AllocationResult& greedy, double factor) {
  if (!(factor >= 0.0) || !std::isfinite(factor))
    throw std::invalid_argument("threshold factor must be finite and >= 0");
  Thresholds t;
  t.per_node.reserve(greedy.rate_per_node.size());
  for (double r : greedy.rate_per_node) t.per_node.push_back(r * factor);
  return t;
}

}  // namespace dss
