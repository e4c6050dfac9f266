#include "dss/config_io.hpp"

#include <fstream>
#include <functional>
#include <map>

namespace dss {

using nlohmann::json;

namespace {

using Setter = std::function<void(const json&)>;

// Applies known keys, records unknown keys and type errors.
void apply_section(const json& section, const std::string& name,
                   const std::map<std::string, Setter>& setters, std::vector<ConfigError>& errs) {
  if (!section.is_object()) {
    errs.push_back({name, name + " must be an object"});
    return;
  }
  for (const auto& [key, value] : section.items()) {
    const auto it = setters.find(key);
    if (it == setters.end()) {
      errs.push_back({name + "." + key, "unknown key " + name + "." + key});
      continue;
    }
    try {
      it->second(value);
    } catch (const json::exception&) {
      errs.push_back({name + "." + key, "wrong type for " + name + "." + key});
    } catch (const std::invalid_argument& e) {
      errs.push_back({name + "." + key, e.what()});
    }
  }
}

double number(const json& v) {
  if (!v.is_number()) throw std::invalid_argument("expected a number");
  return v.get<double>();
}

std::int64_t integer(const json& v) {
  if (!v.is_number_integer()) throw std::invalid_argument("expected an integer");
  return v.get<std::int64_t>();
}

std::size_t count(const json& v) {
  const auto i = integer(v);
  if (i < 0) throw std::invalid_argument("expected a non-negative integer");
  return static_cast<std::size_t>(i);
}

template <class T, class F>
std::vector<T> list_of(const json& v, F convert) {
  if (!v.is_array()) throw std::invalid_argument("expected an array");
  std::vector<T> out;
  for (const auto& x : v) out.push_back(convert(x));
  return out;
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
  ExperimentConfig cfg;
  std::vector<ConfigError> errs;
  if (!doc.is_object()) throw ConfigValidationError(std::vector<ConfigError>{{"", "configuration must be a JSON object"}});

  bool d_ref_given = false;
  const std::map<std::string, Setter> radio_keys{
      {"S", [&](const json& v) { cfg.radio.S = static_cast<int>(integer(v)); }},
      {"W", [&](const json& v) { cfg.radio.W = number(v); }},
      {"P_T", [&](const json& v) { cfg.radio.P_T = number(v); }},
      {"R", [&](const json& v) { cfg.radio.R = number(v); }},
      {"alpha", [&](const json& v) { cfg.radio.alpha = number(v); }},
      {"noise_density", [&](const json& v) { cfg.radio.noise_density = number(v); }},
      {"d_min", [&](const json& v) { cfg.radio.d_min = number(v); }},
      {"d_ref", [&](const json& v) { cfg.radio.d_ref = number(v); d_ref_given = true; }},
  };
  const std::map<std::string, Setter> sim_keys{
      {"R_N", [&](const json& v) { cfg.sim.R_N = number(v); }},
      {"clock_rate", [&](const json& v) { cfg.sim.clock_rate = number(v); }},
      {"max_sim_time", [&](const json& v) { cfg.sim.max_sim_time = number(v); }},
      {"convergence_window", [&](const json& v) { cfg.sim.convergence_window = integer(v); }},
      {"seed", [&](const json& v) {
         if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0))
           throw std::invalid_argument("seed must be a non-negative integer");
         cfg.sim.seed = v.get<std::uint64_t>();
       }},
      {"threshold_factor", [&](const json& v) { cfg.sim.threshold_factor = number(v); }},
      {"initial_occupied", [&](const json& v) {
         if (!v.is_boolean()) throw std::invalid_argument("expected a boolean");
         cfg.sim.initial_occupied = v.get<bool>();
       }},
  };
  const std::map<std::string, Setter> sweep_keys{
      {"densities", [&](const json& v) { cfg.sweep.densities = list_of<double>(v, number); }},
      {"radii", [&](const json& v) { cfg.sweep.radii = list_of<double>(v, number); }},
      {"node_counts", [&](const json& v) { cfg.sweep.node_counts = list_of<std::size_t>(v, count); }},
      {"replications", [&](const json& v) { cfg.sweep.replications = count(v); }},
      {"region_width", [&](const json& v) { cfg.sweep.region.width = number(v); }},
      {"region_height", [&](const json& v) { cfg.sweep.region.height = number(v); }},
      {"ccdf_points", [&](const json& v) { cfg.sweep.ccdf_points = count(v); }},
  };

  for (const auto& [key, value] : doc.items()) {
    if (key == "radio") apply_section(value, "radio", radio_keys, errs);
    else if (key == "sim") apply_section(value, "sim", sim_keys, errs);
    else if (key == "sweep") apply_section(value, "sweep", sweep_keys, errs);
    else errs.push_back({key, "unknown key " + key});
  }
  // The served user sits at the coverage edge unless placed explicitly.
  if (!d_ref_given) cfg.radio.d_ref = cfg.radio.R;

  auto more = check_radio(cfg.radio);
  errs.insert(errs.end(), more.begin(), more.end());
  more = check_sim(cfg.sim);
  errs.insert(errs.end(), more.begin(), more.end());
  if (!errs.empty()) throw ConfigValidationError(std::move(errs));

  cfg.sweep.radio = cfg.radio;
  cfg.sweep.sim = cfg.sim;
  validate_sweep(cfg.sweep);
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigValidationError({{"", std::string("config is not valid JSON: ") + e.what()}});
  }
  return parse_config(doc);
}

json to_json(const RadioConfig& r) {
  return json{{"S", r.S},         {"W", r.W},
              {"P_T", r.P_T},     {"R", r.R},
              {"alpha", r.alpha}, {"noise_density", r.noise_density},
              {"d_min", r.d_min}, {"d_ref", r.d_ref}};
}

json to_json(const SimConfig& s) {
  json j{{"R_N", s.R_N},
         {"clock_rate", s.clock_rate},
         {"max_sim_time", s.max_sim_time},
         {"seed", s.seed},
         {"threshold_factor", s.threshold_factor},
         {"initial_occupied", s.initial_occupied}};
  if (s.convergence_window) j["convergence_window"] = *s.convergence_window;
  return j;
}

json to_json(const ExperimentConfig& cfg) {
  const auto& sw = cfg.sweep;
  return json{{"radio", to_json(cfg.radio)},
              {"sim", to_json(cfg.sim)},
              {"sweep",
               {{"densities", sw.densities},
                {"radii", sw.radii},
                {"node_counts", sw.node_counts},
                {"replications", sw.replications},
                {"region_width", sw.region.width},
                {"region_height", sw.region.height},
                {"ccdf_points", sw.ccdf_points}}}};
}

}  // namespace dss
