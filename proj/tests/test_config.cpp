#include <doctest.h>

#include "umimo/config.hpp"

using namespace umimo;

TEST_CASE("defaults are the reference deployment")
{
  RunConfig const cfg = parse_config("{}");
  auto const &s = cfg.sim;
  CHECK(s.num_antennas == 256);
  CHECK(s.num_aps == 256);
  CHECK(s.antennas_per_ap == 1);
  CHECK(s.num_users == 16);
  CHECK(s.p_d == 0.2);
  CHECK(s.p_u == 0.1);
  CHECK(s.f_c_mhz == 1900.0);
  CHECK(s.h_ap == 15.0);
  CHECK(s.h_ue == 1.65);
  CHECK(s.sigma_sd_db == 8.0);
  CHECK(s.d0_km == 0.01);
  CHECK(s.d1_km == 0.05);
  CHECK(s.noise_density_dbm_hz == -174.0);
  CHECK(s.noise_figure_db == 9.0);
  CHECK(s.bandwidth_hz == 5e6);
  CHECK(cfg.plan.user_counts == std::vector<int>{2, 6, 10, 16, 20, 24, 32});
  CHECK(cfg.plan.antennas_per_ap == std::vector<int>{1, 8, 256});
}

TEST_CASE("nested keys override defaults")
{
  auto const cfg = parse_config(R"({
    "system": {"num_antennas": 64, "antennas_per_ap": 4, "num_users": 8},
    "power": {"p_d": 0.5},
    "experiment": {"seed": 99, "n_topology_trials": 10, "antennas_per_ap": [1, 64]}
  })");
  CHECK(cfg.sim.num_antennas == 64);
  CHECK(cfg.sim.antennas_per_ap == 4);
  CHECK(cfg.sim.num_aps == 16);
  CHECK(cfg.sim.p_d == 0.5);
  CHECK(cfg.sim.seed == 99);
  CHECK(cfg.sim.n_topology_trials == 10);
  CHECK(cfg.plan.antennas_per_ap == std::vector<int>{1, 64});
}

TEST_CASE("round trip through dump_config")
{
  auto const a = parse_config(R"({"system": {"num_users": 5}, "noise": {"figure_db": 7.5}})");
  auto const b = parse_config(dump_config(a));
  CHECK(b.sim.num_users == 5);
  CHECK(b.sim.noise_figure_db == 7.5);
  CHECK(dump_config(a) == dump_config(b));
}

TEST_CASE("field-level errors")
{
  auto field_of = [](std::string const &text) {
    try {
      parse_config(text);
    } catch (ConfigError const &e) {
      return e.field();
    }
    return std::string("<no error>");
  };
  CHECK(field_of(R"({"system": {"num_users": 256}})") == "system.num_users");
  CHECK(field_of(R"({"system": {"num_aps": 3}})") == "system.antennas_per_ap");
  CHECK(field_of(R"({"power": {"p_u": -1}})") == "power.p_u");
  CHECK(field_of(R"({"propagation": {"d1_km": 0.001}})") == "propagation.d1_km");
  CHECK(field_of(R"({"noise": {"bandwidth_hz": 0}})") == "noise.bandwidth_hz");
  CHECK(field_of(R"({"system": {"num_user": 4}})") == "system.num_user");
  CHECK(field_of(R"({"system": {"num_users": 2.5}})") == "system.num_users");
  CHECK(field_of(R"({"experiment": {"user_counts": [2, 300]}})") == "experiment.user_counts");
  CHECK(field_of(R"({"experiment": {"user_counts": []}})") == "experiment.user_counts");
  CHECK(field_of(R"({"experiment": {"antennas_per_ap": [3]}})") == "experiment.antennas_per_ap");
  CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
}

TEST_CASE("missing file is reported distinctly")
{
  CHECK_THROWS_AS(load_config("/nonexistent/umimo/config.json"), ConfigNotFound);
}

TEST_CASE("layout helpers")
{
  SimulationConfig s;
  auto const c = s.with_layout(32);
  CHECK(c.num_aps == 32);
  CHECK(c.antennas_per_ap == 8);
  CHECK_NOTHROW(c.validate());
  CHECK_THROWS_AS(s.with_layout(3), ConfigError);
  CHECK(s.with_users(4).num_users == 4);
}
