#include <doctest.h>

#include <cmath>
#include <limits>

#include "dss/config_io.hpp"
#include "dss/network_model.hpp"

using namespace dss;

namespace {

bool has_field(const ConfigValidationError& e, const std::string& field) {
  for (const auto& err : e.errors())
    if (err.field == field) return true;
  return false;
}

std::vector<ConfigError> errors_of(const RadioConfig& r, const SimConfig& s) {
  try {
    validate_config(r, s);
  } catch (const ConfigValidationError& e) {
    return e.errors();
  }
  return {};
}

}  // namespace

TEST_CASE("radio defaults") {
  const RadioConfig r;
  CHECK(r.S == 10);
  CHECK(r.W == 20e6);
  CHECK(r.P_T == 1.0);
  CHECK(r.R == 30.0);
  CHECK(r.alpha == 4.0);
  CHECK(r.d_ref == r.R);
  CHECK(r.n0() == doctest::Approx(8e-14));
  CHECK(SimConfig{}.R_N == 300.0);
}

TEST_CASE("validate_config accepts the default link budget unchanged") {
  RadioConfig r;
  SimConfig s;
  const auto v = validate_config(r, s);
  CHECK(v.radio == r);
  CHECK(v.sim == s);
  // Idempotent.
  const auto again = validate_config(v.radio, v.sim);
  CHECK(again.radio == v.radio);
  CHECK(again.sim == v.sim);
}

TEST_CASE("validate_config names each violated constraint") {
  RadioConfig r;
  SimConfig s;

  SUBCASE("S = 0") {
    r.S = 0;
    const auto errs = errors_of(r, s);
    REQUIRE(errs.size() == 1);
    CHECK(errs[0].message == "S must be >= 1");
  }
  SUBCASE("d_ref below d_min") {
    r.d_min = 5;
    r.d_ref = 1;
    const auto errs = errors_of(r, s);
    REQUIRE(errs.size() == 1);
    CHECK(errs[0].message == "d_ref must be >= d_min");
  }
  SUBCASE("every violation is reported at once") {
    r.W = 0;
    r.alpha = 1.5;
    r.noise_density = -1;
    s.R_N = 0;
    s.clock_rate = -2;
    s.convergence_window = 0;
    s.max_sim_time = 0;
    try {
      validate_config(r, s);
      FAIL("expected an error");
    } catch (const ConfigValidationError& e) {
      CHECK(e.errors().size() == 7);
      for (const char* f : {"W", "alpha", "noise_density", "R_N", "clock_rate", "convergence_window",
                            "max_sim_time"})
        CHECK(has_field(e, f));
    }
  }
  SUBCASE("non-finite values are rejected") {
    r.P_T = std::numeric_limits<double>::quiet_NaN();
    r.R = std::numeric_limits<double>::infinity();
    CHECK(errors_of(r, s).size() == 2);
  }
}

TEST_CASE("accepted configs satisfy every field invariant") {
  // Sweep a small lattice of configurations; anything accepted must obey the
  // invariants checked field by field here.
  for (int S : {0, 1, 10})
    for (double W : {-1.0, 0.0, 1e6})
      for (double alpha : {1.0, 2.0, 4.0})
        for (double d_min : {0.0, 1.0, 40.0}) {
          RadioConfig r;
          r.S = S;
          r.W = W;
          r.alpha = alpha;
          r.d_min = d_min;
          if (!errors_of(r, SimConfig{}).empty()) continue;
          CHECK(r.S >= 1);
          CHECK(r.W > 0);
          CHECK(r.alpha >= 2);
          CHECK(r.d_min > 0);
          CHECK(r.d_min <= r.d_ref);
        }
}

TEST_CASE("Sbos only holds -1 and +1") {
  CHECK_THROWS_AS(Sbos::from_states({1, 0, -1}), std::invalid_argument);
  CHECK_THROWS_AS(Sbos::from_states({2}), std::invalid_argument);
  const auto b = Sbos::from_states({1, -1, 1});
  CHECK(b.size() == 3);
  CHECK(b.occupied_count() == 2);
  CHECK(b.bitstring() == "101");
  CHECK(Sbos(4).bitstring() == "0000");
  CHECK(Sbos::all_occupied(2).all_occupied());
}

TEST_CASE("NodeSet assigns contiguous ids and rejects non-finite positions") {
  const NodeSet ns({{0, 0}, {1, 2}, {3, 4}});
  for (NodeId i = 0; i < ns.size(); ++i) CHECK(ns[i].id == i);
  CHECK_THROWS_AS(NodeSet({{0, std::nan("")}}), std::invalid_argument);
  const auto sub = ns.subset({2, 0});
  CHECK(sub.size() == 2);
  CHECK(sub.position(0) == Point{3, 4});
  CHECK(sub[1].id == 1);
  CHECK_THROWS_AS(NodeSet::from_nodes({Node{1, {0, 0}}}), std::invalid_argument);
}

TEST_CASE("rogue interference raises the noise floor") {
  RadioConfig r;
  const auto adjusted = with_rogue_interference(r, 1e-12);
  CHECK(adjusted.n0() == doctest::Approx(r.n0() + 1e-12));
  CHECK_THROWS(with_rogue_interference(r, -1.0));
}

TEST_CASE("JSON config: known keys parse, unknown keys are rejected") {
  using nlohmann::json;
  SUBCASE("round trip is idempotent") {
    const json doc = {{"radio", {{"S", 4}, {"alpha", 3.5}, {"R", 25.0}}},
                      {"sim", {{"R_N", 150.0}, {"seed", 9}, {"convergence_window", 12}}},
                      {"sweep", {{"densities", {25, 625}}, {"replications", 3}}}};
    const auto cfg = parse_config(doc);
    CHECK(cfg.radio.S == 4);
    CHECK(cfg.radio.d_ref == 25.0);  // follows R when not given
    CHECK(cfg.sim.seed == 9);
    CHECK(cfg.sweep.densities == std::vector<double>{25, 625});
    const auto again = parse_config(to_json(cfg));
    CHECK(again.radio == cfg.radio);
    CHECK(again.sim == cfg.sim);
    CHECK(to_json(again) == to_json(cfg));
  }
  SUBCASE("unknown keys in every section") {
    const json doc = {{"radio", {{"S", 4}, {"bandwidth", 1}}}, {"sim", {{"lambda", 1}}}, {"extra", 1}};
    try {
      parse_config(doc);
      FAIL("expected an error");
    } catch (const ConfigValidationError& e) {
      CHECK(has_field(e, "radio.bandwidth"));
      CHECK(has_field(e, "sim.lambda"));
      CHECK(has_field(e, "extra"));
    }
  }
  SUBCASE("type errors and constraint violations are collected together") {
    const json doc = {{"radio", {{"S", "ten"}, {"W", -1.0}}}};
    try {
      parse_config(doc);
      FAIL("expected an error");
    } catch (const ConfigValidationError& e) {
      CHECK(has_field(e, "radio.S"));
      CHECK(has_field(e, "W"));
    }
  }
}
