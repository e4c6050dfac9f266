#include "dss/network_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dss {

NodeSet::NodeSet(const std::vector<Point>& positions) {
  nodes_.reserve(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (!std::isfinite(positions[i].x) || !std::isfinite(positions[i].y))
      throw std::invalid_argument("node " + std::to_string(i) + " has a non-finite position");
    nodes_.push_back(Node{i, positions[i]});
  }
}

NodeSet NodeSet::from_nodes(std::vector<Node> nodes) {
  std::vector<Point> pts;
  pts.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].id != i)
      throw std::invalid_argument("node ids must be contiguous from 0");
    pts.push_back(nodes[i].position);
  }
  return NodeSet(pts);
}

NodeSet NodeSet::subset(const std::vector<NodeId>& ids) const {
  std::vector<Point> pts;
  pts.reserve(ids.size());
  for (NodeId id : ids) {
    if (id >= nodes_.size())
      throw std::out_of_range("node id " + std::to_string(id) + " out of range");
    pts.push_back(nodes_[id].position);
  }
  return NodeSet(pts);
}

double distance(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

Sbos Sbos::from_states(const std::vector<int>& states) {
  Sbos out;
  out.states_.reserve(states.size());
  for (int s : states) {
    if (s != 1 && s != -1)
      throw std::invalid_argument("SBOS entries must be -1 or +1, got " + std::to_string(s));
    out.states_.push_back(static_cast<std::int8_t>(s));
  }
  return out;
}

Sbos Sbos::all_occupied(std::size_t bands) {
  Sbos out(bands);
  std::fill(out.states_.begin(), out.states_.end(), std::int8_t{1});
  return out;
}

std::size_t Sbos::occupied_count() const {
  return static_cast<std::size_t>(std::count(states_.begin(), states_.end(), std::int8_t{1}));
}

std::string Sbos::bitstring() const {
  std::string s(states_.size(), '0');
  for (std::size_t k = 0; k < states_.size(); ++k)
    if (states_[k] > 0) s[k] = '1';
  return s;
}

RadioConfig with_rogue_interference(RadioConfig radio, double power_w) {
  if (!(power_w >= 0.0) || !std::isfinite(power_w))
    throw std::invalid_argument("rogue interference power must be finite and non-negative");
  radio.noise_density += power_w / radio.W;
  return radio;
}

const char* to_string(Scheme s) {
  return s == Scheme::DSS ? "dss" : "greedy";
}

namespace {

std::string join_errors(const std::vector<ConfigError>& errors) {
  std::ostringstream os;
  os << "invalid configuration:";
  for (const auto& e : errors) os << ' ' << e.message << ';';
  return os.str();
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

ConfigValidationError::ConfigValidationError(std::vector<ConfigError> errors)
    : std::runtime_error(join_errors(errors)), errors_(std::move(errors)) {}

std::vector<ConfigError> check_radio(const RadioConfig& r) {
  std::vector<ConfigError> errs;
  if (r.S < 1) errs.push_back({"S", "S must be >= 1"});
  if (!positive(r.W)) errs.push_back({"W", "W must be > 0"});
  if (!positive(r.P_T)) errs.push_back({"P_T", "P_T must be > 0"});
  if (!positive(r.R)) errs.push_back({"R", "R must be > 0"});
  if (!std::isfinite(r.alpha) || r.alpha < 2.0) errs.push_back({"alpha", "alpha must be >= 2"});
  if (!positive(r.noise_density))
    errs.push_back({"noise_density", "noise_density must be > 0"});
  if (!positive(r.d_min)) errs.push_back({"d_min", "d_min must be > 0"});
  if (!std::isfinite(r.d_ref) || r.d_ref < r.d_min)
    errs.push_back({"d_ref", "d_ref must be >= d_min"});
  return errs;
}

std::vector<ConfigError> check_sim(const SimConfig& s) {
  std::vector<ConfigError> errs;
  if (!positive(s.R_N)) errs.push_back({"R_N", "R_N must be > 0"});
  if (!positive(s.clock_rate)) errs.push_back({"clock_rate", "clock_rate must be > 0"});
  if (!positive(s.max_sim_time)) errs.push_back({"max_sim_time", "max_sim_time must be > 0"});
  if (s.convergence_window && *s.convergence_window < 1)
    errs.push_back({"convergence_window", "convergence_window must be >= 1"});
  if (!std::isfinite(s.threshold_factor) || s.threshold_factor < 0.0)
    errs.push_back({"threshold_factor", "threshold_factor must be >= 0"});
  return errs;
}

ValidatedConfig validate_config(const RadioConfig& radio, const SimConfig& sim) {
  auto errs = check_radio(radio);
  auto sim_errs = check_sim(sim);
  errs.insert(errs.end(), sim_errs.begin(), sim_errs.end());
  if (!errs.empty()) throw ConfigValidationError(std::move(errs));
  return {radio, sim};
}

}  // namespace dss
