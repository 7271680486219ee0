#pragma once

#include "umimo/uplink.hpp"

namespace umimo {

/// Conjugate-beamforming power coefficients, one per AP and user (shared by
/// all antennas of the AP). Per-antenna budget: sum_k eta(q, k) alpha(q, k) <= 1.
struct DownlinkPowerCBF
{
  MatrixXd eta; // N_AP x K

  void validate(LargeScaleState const &ls) const;
};

/// Zero-forcing precoding coefficients, common across antennas.
struct DownlinkPowerZFP
{
  VectorXd eta; // K

  void validate(Index num_users) const;
};

SinrVector cbf_sinr(LargeScaleState const &ls, DownlinkPowerCBF const &power, SimulationConfig const &cfg);

/// chi(i, k): i-th diagonal entry of
///   E[(C C^H)^{-1} C E_k C^H (C C^H)^{-1}],
/// C the K x M matrix of estimates (row i = user i across antennas) and E_k the
/// diagonal per-antenna error covariance of user k.
MatrixXd estimate_chi(LargeScaleState const &ls, SimulationConfig const &cfg, Rng &rng);

SinrVector zfp_sinr(DownlinkPowerZFP const &power, MatrixXd const &chi, SimulationConfig const &cfg);

/// Single-AP specialization: chi(i, k) factors as (beta_k - alpha_k) phi_i.
/// Throws std::invalid_argument for N_AP > 1.
SinrVector zfp_sinr_cellular(DownlinkPowerZFP const &power, LargeScaleState const &ls, VectorXd const &phi,
                             SimulationConfig const &cfg);

/// Link-level downlink r = sqrt(p_d) G^T B u + w with B built from the
/// estimates. Users decode against the mean of their effective gain.
EmpiricalSinr simulate_downlink(LargeScaleState const &ls, DownlinkPowerCBF const &power,
                                SimulationConfig const &cfg, Rng &rng);
EmpiricalSinr simulate_downlink(LargeScaleState const &ls, DownlinkPowerZFP const &power,
                                SimulationConfig const &cfg, Rng &rng);

/// Expected transmit power per antenna, p_d sum_k |B(m, k)|^2, averaged over
/// cfg.n_channel_samples zero-forcing draws (M entries, watts).
struct AntennaPower
{
  VectorXd mean;
  VectorXd std_error;
};

AntennaPower measure_zfp_antenna_power(LargeScaleState const &ls, DownlinkPowerZFP const &power,
                                       SimulationConfig const &cfg, Rng &rng);

/// Precoding matrices (M x K) for one estimate draw.
MatrixXcd cbf_precoder(MatrixXcd const &g_hat, MatrixXd const &eta_per_antenna);
MatrixXcd zfp_precoder(MatrixXcd const &zf_pseudo_inverse, VectorXd const &eta);

} // namespace umimo
