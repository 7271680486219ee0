#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace umimo {

/// Raised for any invalid or unreadable configuration. `field()` names the
/// offending key in dotted form (e.g. "system.num_users") when one applies.
class ConfigError : public std::runtime_error
{
public:
  ConfigError(std::string field, std::string const &what)
    : std::runtime_error(field.empty() ? what : field + ": " + what), field_(std::move(field))
  {}
  std::string const &field() const noexcept { return field_; }

private:
  std::string field_;
};

class ConfigNotFound : public ConfigError
{
public:
  explicit ConfigNotFound(std::filesystem::path const &path)
    : ConfigError("", "config not found: " + path.string())
  {}
};

/// Physical and experiment parameters. Defaults reproduce the 256-antenna,
/// 1 km x 1 km, 1.9 GHz reference deployment.
struct SimulationConfig
{
  int num_antennas = 256;    // M, total service antennas
  int num_aps = 256;         // N_AP
  int antennas_per_ap = 1;   // N_t
  int num_users = 16;        // K

  double area_side = 1000.0; // meters
  double p_u = 0.1;          // UE transmit power, W
  double p_d = 0.2;          // per-antenna downlink power, W

  double f_c_mhz = 1900.0;
  double h_ap = 15.0;        // meters
  double h_ue = 1.65;        // meters
  double sigma_sd_db = 8.0;
  double d0_km = 0.01;
  double d1_km = 0.05;

  double noise_density_dbm_hz = -174.0;
  double noise_figure_db = 9.0;
  double bandwidth_hz = 5e6;

  int n_topology_trials = 200;
  int n_channel_samples = 1000;
  std::uint64_t seed = 1;

  /// Throws ConfigError naming the first violated constraint.
  void validate() const;

  /// Same deployment with M redistributed over `n_aps` access points.
  SimulationConfig with_layout(int n_aps) const;
  SimulationConfig with_users(int k) const;
};

/// Which antenna layouts and user counts the CLI experiments iterate over.
struct ExperimentPlan
{
  std::vector<int> antennas_per_ap = {1, 8, 256};
  std::vector<int> user_counts = {2, 6, 10, 16, 20, 24, 32};

  void validate(SimulationConfig const &sim) const;
};

struct RunConfig
{
  SimulationConfig sim;
  ExperimentPlan plan;
};

/// Parses the nested JSON config document. Every key is optional; unknown keys
/// are rejected so typos do not silently fall back to defaults.
RunConfig parse_config(std::string const &json_text);
RunConfig load_config(std::filesystem::path const &path);
std::string dump_config(RunConfig const &cfg);

} // namespace umimo
