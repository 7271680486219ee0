#include "umimo/power.hpp"

#include <iostream>

namespace umimo {

UplinkPower ul_full_power(Index num_users)
{
  if (num_users < 1) { throw std::invalid_argument("ul_full_power: need at least one user"); }
  return {VectorXd::Ones(num_users)};
}

DownlinkPowerCBF cbf_full_power(LargeScaleState const &ls)
{
  VectorXd const load = ls.alpha.rowwise().sum();
  DownlinkPowerCBF out{MatrixXd::Zero(ls.num_aps(), ls.num_users())};
  Index dead = 0;
  for (Index q = 0; q < ls.num_aps(); ++q) {
    if (load(q) > 0.0) {
      out.eta.row(q).setConstant(1.0 / load(q));
    } else {
      ++dead;
    }
  }
  if (dead > 0) {
    std::clog << "warning: cbf_full_power: " << dead << " AP(s) with zero estimate variance left silent\n";
  }
  return out;
}

DownlinkPowerZFP zfp_subopt_power(ZfMoments const &moments, Index num_users)
{
  double const load = moments.max_antenna_load();
  if (!(load > 0.0) || !std::isfinite(load)) {
    throw std::runtime_error("zfp_subopt_power: degenerate zero-forcing moments");
  }
  return {VectorXd::Constant(num_users, 1.0 / load)};
}

DownlinkPowerZFP zfp_subopt_power(LargeScaleState const &ls, SimulationConfig const &cfg, Rng &rng)
{
  return zfp_subopt_power(estimate_zf_moments(ls, cfg.antennas_per_ap, cfg.n_channel_samples, rng),
                          ls.num_users());
}

MaxMinResult cbf_maxmin_cellular(LargeScaleState const &ls, SimulationConfig const &cfg)
{
  if (ls.num_aps() != 1) { throw std::invalid_argument("cbf_maxmin_cellular: requires a single AP (N_AP = 1)"); }
  Index const k_users = ls.num_users();
  double const m = static_cast<double>(cfg.antennas_per_ap);
  double const noise = noise_power_watts(cfg);

  VectorXd cost(k_users);
  for (Index k = 0; k < k_users; ++k) {
    double const a = ls.alpha(0, k);
    if (!(a > 0.0)) {
      throw InfeasibleError("cbf_maxmin_cellular: user " + std::to_string(k) + " has zero estimate variance");
    }
    cost(k) = (noise + cfg.p_d * m * ls.beta(0, k)) / (cfg.p_d * m * m * a);
  }
  MaxMinResult out;
  out.t = 1.0 / cost.sum();
  out.power.eta.resize(1, k_users);
  for (Index k = 0; k < k_users; ++k) {
    // eta_k alpha_k = c_k / sum(c): the budget shares sum to one by construction.
    out.power.eta(0, k) = (cost(k) / cost.sum()) / ls.alpha(0, k);
  }
  return out;
}

} // namespace umimo
