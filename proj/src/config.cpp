#include "umimo/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace umimo {

namespace {

using nlohmann::json;

void require(bool cond, char const *field, std::string const &msg)
{
  if (!cond) { throw ConfigError(field, msg); }
}

void require_positive(double v, char const *field)
{
  require(std::isfinite(v) && v > 0.0, field, "must be finite and strictly positive");
}

template <typename T> void read_into(json const &section, std::string const &prefix, char const *key, T &out)
{
  auto it = section.find(key);
  if (it == section.end()) { return; }
  try {
    if constexpr (std::is_integral_v<T>) {
      if (!it->is_number_integer()) { throw ConfigError(prefix + key, "expected an integer"); }
      if constexpr (std::is_unsigned_v<T>) {
        if (it->template get<long long>() < 0) { throw ConfigError(prefix + key, "must be non-negative"); }
      }
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!it->is_number()) { throw ConfigError(prefix + key, "expected a number"); }
    }
    out = it->template get<T>();
  } catch (json::exception const &e) {
    throw ConfigError(prefix + key, e.what());
  }
}

void reject_unknown(json const &section, std::string const &prefix, std::set<std::string> const &known)
{
  for (auto const &[k, v] : section.items()) {
    if (!known.contains(k)) { throw ConfigError(prefix + k, "unknown key"); }
  }
}

json const *section(json const &root, char const *name)
{
  auto it = root.find(name);
  if (it == root.end()) { return nullptr; }
  if (!it->is_object()) { throw ConfigError(name, "expected an object"); }
  return &*it;
}

} // namespace

void SimulationConfig::validate() const
{
  require(num_antennas >= 1, "system.num_antennas", "must be >= 1");
  require(num_aps >= 1 && num_aps <= num_antennas, "system.num_aps", "must satisfy 1 <= N_AP <= M");
  require(antennas_per_ap >= 1, "system.antennas_per_ap", "must be >= 1");
  require(num_aps * antennas_per_ap == num_antennas, "system.antennas_per_ap",
          "N_AP * N_t must equal M exactly");
  require(num_users >= 1, "system.num_users", "must be >= 1");
  require(num_users < num_antennas, "system.num_users", "must be < M");
  require_positive(area_side, "system.area_side");
  require_positive(p_u, "power.p_u");
  require_positive(p_d, "power.p_d");
  require_positive(f_c_mhz, "propagation.f_c_mhz");
  require_positive(h_ap, "propagation.h_ap");
  require_positive(h_ue, "propagation.h_ue");
  require(std::isfinite(sigma_sd_db) && sigma_sd_db >= 0.0, "propagation.sigma_sd_db", "must be >= 0");
  require_positive(d0_km, "propagation.d0_km");
  require(std::isfinite(d1_km) && d1_km > d0_km, "propagation.d1_km", "must exceed d0_km");
  require(std::isfinite(noise_density_dbm_hz), "noise.density_dbm_hz", "must be finite");
  require(std::isfinite(noise_figure_db), "noise.figure_db", "must be finite");
  require_positive(bandwidth_hz, "noise.bandwidth_hz");
  require(n_topology_trials >= 1, "experiment.n_topology_trials", "must be >= 1");
  require(n_channel_samples >= 1, "experiment.n_channel_samples", "must be >= 1");
}

SimulationConfig SimulationConfig::with_layout(int n_aps) const
{
  if (n_aps < 1 || num_antennas % n_aps != 0) {
    throw ConfigError("system.num_aps", "N_AP must divide M");
  }
  SimulationConfig out = *this;
  out.num_aps = n_aps;
  out.antennas_per_ap = num_antennas / n_aps;
  return out;
}

SimulationConfig SimulationConfig::with_users(int k) const
{
  SimulationConfig out = *this;
  out.num_users = k;
  return out;
}

void ExperimentPlan::validate(SimulationConfig const &sim) const
{
  require(!antennas_per_ap.empty(), "experiment.antennas_per_ap", "must list at least one layout");
  for (int nt : antennas_per_ap) {
    require(nt >= 1 && sim.num_antennas % nt == 0, "experiment.antennas_per_ap",
            "every entry must divide num_antennas (" + std::to_string(nt) + ")");
  }
  require(!user_counts.empty(), "experiment.user_counts", "must list at least one K");
  for (int k : user_counts) {
    require(k >= 1 && k < sim.num_antennas, "experiment.user_counts",
            "every K must satisfy 1 <= K < M (" + std::to_string(k) + ")");
  }
}

RunConfig parse_config(std::string const &json_text)
{
  json root;
  try {
    root = json::parse(json_text);
  } catch (json::parse_error const &e) {
    throw ConfigError("", std::string("malformed config: ") + e.what());
  }
  if (!root.is_object()) { throw ConfigError("", "config root must be an object"); }
  reject_unknown(root, "", {"system", "power", "propagation", "noise", "experiment"});

  RunConfig cfg;
  SimulationConfig &s = cfg.sim;
  bool layout_given = false;
  if (auto const *sec = section(root, "system")) {
    reject_unknown(*sec, "system.", {"num_antennas", "num_aps", "antennas_per_ap", "num_users", "area_side"});
    read_into(*sec, "system.", "num_antennas", s.num_antennas);
    layout_given = sec->contains("num_aps") || sec->contains("antennas_per_ap");
    read_into(*sec, "system.", "num_aps", s.num_aps);
    read_into(*sec, "system.", "antennas_per_ap", s.antennas_per_ap);
    if (sec->contains("num_aps") && !sec->contains("antennas_per_ap") && s.num_aps > 0) {
      s.antennas_per_ap = s.num_antennas / s.num_aps;
    } else if (sec->contains("antennas_per_ap") && !sec->contains("num_aps") && s.antennas_per_ap > 0) {
      s.num_aps = s.num_antennas / s.antennas_per_ap;
    }
    read_into(*sec, "system.", "num_users", s.num_users);
    read_into(*sec, "system.", "area_side", s.area_side);
  }
  if (!layout_given) {
    s.num_aps = s.num_antennas;
    s.antennas_per_ap = 1;
  }
  if (auto const *sec = section(root, "power")) {
    reject_unknown(*sec, "power.", {"p_u", "p_d"});
    read_into(*sec, "power.", "p_u", s.p_u);
    read_into(*sec, "power.", "p_d", s.p_d);
  }
  if (auto const *sec = section(root, "propagation")) {
    reject_unknown(*sec, "propagation.", {"f_c_mhz", "h_ap", "h_ue", "sigma_sd_db", "d0_km", "d1_km"});
    read_into(*sec, "propagation.", "f_c_mhz", s.f_c_mhz);
    read_into(*sec, "propagation.", "h_ap", s.h_ap);
    read_into(*sec, "propagation.", "h_ue", s.h_ue);
    read_into(*sec, "propagation.", "sigma_sd_db", s.sigma_sd_db);
    read_into(*sec, "propagation.", "d0_km", s.d0_km);
    read_into(*sec, "propagation.", "d1_km", s.d1_km);
  }
  if (auto const *sec = section(root, "noise")) {
    reject_unknown(*sec, "noise.", {"density_dbm_hz", "figure_db", "bandwidth_hz"});
    read_into(*sec, "noise.", "density_dbm_hz", s.noise_density_dbm_hz);
    read_into(*sec, "noise.", "figure_db", s.noise_figure_db);
    read_into(*sec, "noise.", "bandwidth_hz", s.bandwidth_hz);
  }
  if (auto const *sec = section(root, "experiment")) {
    reject_unknown(*sec, "experiment.",
                   {"n_topology_trials", "n_channel_samples", "seed", "antennas_per_ap", "user_counts"});
    read_into(*sec, "experiment.", "n_topology_trials", s.n_topology_trials);
    read_into(*sec, "experiment.", "n_channel_samples", s.n_channel_samples);
    read_into(*sec, "experiment.", "seed", s.seed);
    read_into(*sec, "experiment.", "antennas_per_ap", cfg.plan.antennas_per_ap);
    read_into(*sec, "experiment.", "user_counts", cfg.plan.user_counts);
  }

  s.validate();
  cfg.plan.validate(s);
  return cfg;
}

RunConfig load_config(std::filesystem::path const &path)
{
  std::ifstream in(path);
  if (!in) { throw ConfigNotFound(path); }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string dump_config(RunConfig const &cfg)
{
  auto const &s = cfg.sim;
  json root = {
    {"system",
     {{"num_antennas", s.num_antennas},
      {"num_aps", s.num_aps},
      {"antennas_per_ap", s.antennas_per_ap},
      {"num_users", s.num_users},
      {"area_side", s.area_side}}},
    {"power", {{"p_u", s.p_u}, {"p_d", s.p_d}}},
    {"propagation",
     {{"f_c_mhz", s.f_c_mhz},
      {"h_ap", s.h_ap},
      {"h_ue", s.h_ue},
      {"sigma_sd_db", s.sigma_sd_db},
      {"d0_km", s.d0_km},
      {"d1_km", s.d1_km}}},
    {"noise",
     {{"density_dbm_hz", s.noise_density_dbm_hz},
      {"figure_db", s.noise_figure_db},
      {"bandwidth_hz", s.bandwidth_hz}}},
    {"experiment",
     {{"n_topology_trials", s.n_topology_trials},
      {"n_channel_samples", s.n_channel_samples},
      {"seed", s.seed},
      {"antennas_per_ap", cfg.plan.antennas_per_ap},
      {"user_counts", cfg.plan.user_counts}}},
  };
  return root.dump(2);
}

} // namespace umimo
