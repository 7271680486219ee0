#pragma once

#include <cmath>

#include <boost/random/uniform_real_distribution.hpp>

#include "umimo/config.hpp"
#include "umimo/scenario.hpp"
#include "umimo/types.hpp"

namespace umimo::test {

inline SimulationConfig layout(int n_aps, int n_t, int k)
{
  SimulationConfig cfg;
  cfg.num_aps = n_aps;
  cfg.antennas_per_ap = n_t;
  cfg.num_antennas = n_aps * n_t;
  cfg.num_users = k;
  return cfg;
}

/// 30 dBm/Hz over 1 Hz with no noise figure: exactly 1 W of noise.
inline SimulationConfig unit_noise(SimulationConfig cfg)
{
  cfg.noise_density_dbm_hz = 30.0;
  cfg.bandwidth_hz = 1.0;
  cfg.noise_figure_db = 0.0;
  return cfg;
}

/// Per-AP gains with uplink pilot SNR p_u*beta/noise spread over [-20, 20] dB,
/// so estimation error is material for some pairs and negligible for others.
inline LargeScaleState random_state(SimulationConfig const &cfg, Rng &rng, double lo_db = -20.0,
                                    double hi_db = 20.0)
{
  boost::random::uniform_real_distribution<double> snr_db(lo_db, hi_db);
  double const noise = noise_power_watts(cfg);
  MatrixXd beta(cfg.num_aps, cfg.num_users);
  for (Index k = 0; k < beta.cols(); ++k) {
    for (Index q = 0; q < beta.rows(); ++q) { beta(q, k) = noise / cfg.p_u * std::pow(10.0, snr_db(rng) / 10.0); }
  }
  return large_scale_from_beta(std::move(beta), cfg);
}

inline LargeScaleState uniform_state(int n_aps, int k, double alpha, double beta)
{
  return {MatrixXd::Constant(n_aps, k, beta), MatrixXd::Constant(n_aps, k, alpha)};
}

inline bool within(double value, double expected, double rel)
{
  return std::abs(value - expected) <= rel * std::abs(expected);
}

} // namespace umimo::test
