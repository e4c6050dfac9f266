#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dss {

using NodeId = std::size_t;

struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

struct Node {
  NodeId id = 0;
  Point position;

  bool operator==(const Node&) const = default;
};

/// Ordered set of access points. Ids are always 0..size()-1 in order.
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(const std::vector<Point>& positions);

  static NodeSet from_nodes(std::vector<Node> nodes);

  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }
  const Node& operator[](NodeId id) const { return nodes_[id]; }
  const Point& position(NodeId id) const { return nodes_[id].position; }
  const std::vector<Node>& nodes() const { return nodes_; }

  auto begin() const { return nodes_.begin(); }
  auto end() const { return nodes_.end(); }

  /// Subset in the order given; ids are reassigned contiguously.
  NodeSet subset(const std::vector<NodeId>& ids) const;

  bool operator==(const NodeSet&) const = default;

 private:
  std::vector<Node> nodes_;
};

double distance(const Point& a, const Point& b);

/// Sub-band occupation state. Entries are +1 (occupied) or -1 (free).
class Sbos {
 public:
  Sbos() = default;
  /// All bands free.
  explicit Sbos(std::size_t bands) : states_(bands, -1) {}
  /// Throws std::invalid_argument on any entry other than -1 or +1.
  static Sbos from_states(const std::vector<int>& states);
  static Sbos all_occupied(std::size_t bands);

  std::size_t size() const { return states_.size(); }
  int operator[](std::size_t k) const { return states_[k]; }
  bool occupied(std::size_t k) const { return states_[k] > 0; }
  void set_occupied(std::size_t k, bool on) { states_[k] = on ? 1 : -1; }

  std::size_t occupied_count() const;
  bool all_occupied() const { return occupied_count() == size(); }

  /// One character per band, '1' occupied and '0' free, band 0 first.
  std::string bitstring() const;

  bool operator==(const Sbos&) const = default;

 private:
  std::vector<std::int8_t> states_;
};

struct RadioConfig {
  int S = 10;                     // sub-bands
  double W = 20e6;                // Hz per sub-band
  double P_T = 1.0;               // W
  double R = 30.0;                // m, coverage radius
  double alpha = 4.0;             // path-loss exponent
  double noise_density = 4e-21;   // W/Hz
  double d_min = 1.0;             // m
  double d_ref = 30.0;            // m, served-user distance

  /// Noise power per sub-band.
  double n0() const { return noise_density * W; }
  std::size_t bands() const { return static_cast<std::size_t>(S); }

  bool operator==(const RadioConfig&) const = default;
};

/// Adds sensed interference from non-participating transmitters to the
/// noise floor. `power_w` is the extra power per sub-band.
RadioConfig with_rogue_interference(RadioConfig radio, double power_w);

struct SimConfig {
  double R_N = 300.0;             // m
  double clock_rate = 1.0;        // triggers/s per node
  double max_sim_time = 100.0;    // s
  /// Consecutive unchanged triggers that declare convergence; unset means
  /// three per node.
  std::optional<std::int64_t> convergence_window;
  std::uint64_t seed = 1;
  /// Multiplier applied to greedy rates when used as QoS thresholds.
  double threshold_factor = 1.0;
  /// Start every node on all sub-bands instead of none.
  bool initial_occupied = false;

  std::int64_t window_for(std::size_t node_count) const {
    return convergence_window ? *convergence_window
                              : static_cast<std::int64_t>(3 * node_count);
  }

  bool operator==(const SimConfig&) const = default;
};

enum class Scheme { DSS, Greedy };

const char* to_string(Scheme s);

struct AllocationResult {
  Scheme scheme = Scheme::Greedy;
  std::vector<Sbos> sbos_per_node;
  std::vector<double> rate_per_node;  // bits/s
  std::vector<double> se_per_node;    // bits/s/Hz
  std::int64_t triggers_executed = 0;
  std::vector<std::int64_t> triggers_per_node;
  bool converged = false;
  double sim_time = 0.0;

  bool operator==(const AllocationResult&) const = default;
};

struct ConfigError {
  std::string field;
  std::string message;

  bool operator==(const ConfigError&) const = default;
};

class ConfigValidationError : public std::runtime_error {
 public:
  explicit ConfigValidationError(std::vector<ConfigError> errors);
  const std::vector<ConfigError>& errors() const { return errors_; }

 private:
  std::vector<ConfigError> errors_;
};

std::vector<ConfigError> check_radio(const RadioConfig& radio);
std::vector<ConfigError> check_sim(const SimConfig& sim);

struct ValidatedConfig {
  RadioConfig radio;
  SimConfig sim;
};

/// Returns the inputs unchanged, or throws ConfigValidationError carrying
/// every violated constraint.
ValidatedConfig validate_config(const RadioConfig& radio, const SimConfig& sim);

}  // namespace dss
