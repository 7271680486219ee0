#pragma once

#include <vector>

#include "umimo/config.hpp"
#include "umimo/types.hpp"

namespace umimo {

struct Point
{
  double x = 0.0;
  double y = 0.0;
  bool operator==(Point const &) const = default;
};

struct Topology
{
  std::vector<Point> ap_positions;
  std::vector<Point> ue_positions;
  bool operator==(Topology const &) const = default;
};

/// Per-AP, per-user statistics. Every antenna of AP q shares row q, so the
/// N_AP x K storage is lossless; expand with expand_to_antennas() when a
/// per-antenna view is needed.
struct LargeScaleState
{
  MatrixXd beta;  // N_AP x K, channel gain
  MatrixXd alpha; // N_AP x K, MMSE estimate variance

  Index num_aps() const { return beta.rows(); }
  Index num_users() const { return beta.cols(); }
  MatrixXd error_variance() const { return beta - alpha; }
};

/// Hata-style intercept in dB; frequency in MHz, heights in meters.
double l0_db(double f_c_mhz, double h_ap, double h_ue);

/// Three-slope path gain (negative dB) at distance `d_km`.
double path_loss_db(double d_km, SimulationConfig const &cfg);

double noise_power_watts(SimulationConfig const &cfg);

/// MMSE estimate variance p_u*beta^2 / (p_u*beta + noise); 0 for beta == 0.
double mmse_variance(double beta, double p_u, double noise_power);

/// UEs uniform over the square. A single AP sits at the center; several APs
/// are uniform as well.
Topology generate_topology(SimulationConfig const &cfg, Rng &rng);

/// Path loss plus i.i.d. log-normal shadowing (one draw per AP-UE pair), and
/// the matching MMSE variances.
LargeScaleState large_scale(Topology const &topo, SimulationConfig const &cfg, Rng &rng);

/// Builds alpha from a given beta using the configured p_u and noise.
LargeScaleState large_scale_from_beta(MatrixXd beta, SimulationConfig const &cfg);

} // namespace umimo
