#pragma once

#include "umimo/downlink.hpp"

namespace umimo {

class InfeasibleError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Every UE transmits at full power (eta_k = 1).
UplinkPower ul_full_power(Index num_users);

/// Each AP spends its whole per-antenna budget with one common coefficient
/// eta_q = 1 / sum_k alpha_qk. An AP that sees no user (all alpha zero) is
/// switched off and reported on std::clog.
DownlinkPowerCBF cbf_full_power(LargeScaleState const &ls);

/// Common ZFP coefficient (max_m sum_k delta_km)^{-1}, delta_km = E|A(k, m)|^2
/// estimated from cfg.n_channel_samples draws. Meets the per-antenna budget in
/// expectation on the most loaded antenna.
DownlinkPowerZFP zfp_subopt_power(LargeScaleState const &ls, SimulationConfig const &cfg, Rng &rng);
DownlinkPowerZFP zfp_subopt_power(ZfMoments const &moments, Index num_users);

struct MaxMinResult
{
  DownlinkPowerCBF power; // 1 x K
  double t = 0.0;         // common SINR every user attains
};

/// Max-min fair conjugate beamforming for a single co-located array. With the
/// budget active, gamma_k = p_d M^2 eta_k alpha_k^2 / (noise + p_d M beta_k);
/// equalizing gives
///   t = 1 / sum_k c_k,  eta_k = t c_k / alpha_k,  c_k = (noise + p_d M beta_k) / (p_d M^2 alpha_k).
/// Throws std::invalid_argument for N_AP > 1 and InfeasibleError when some
/// alpha_k is zero.
MaxMinResult cbf_maxmin_cellular(LargeScaleState const &ls, SimulationConfig const &cfg);

} // namespace umimo
