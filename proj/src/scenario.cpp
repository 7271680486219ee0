#include "umimo/scenario.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

namespace umimo {

double l0_db(double f_c_mhz, double h_ap, double h_ue)
{
  if (!(f_c_mhz > 0.0) || !(h_ap > 0.0) || !(h_ue >= 0.0)) {
    throw std::domain_error("l0_db: frequency and AP height must be positive, UE height non-negative");
  }
  double const lf = std::log10(f_c_mhz);
  return 46.3 + 33.9 * lf - 13.82 * std::log10(h_ap) - (1.1 * lf - 0.7) * h_ue + 1.56 * lf - 0.8;
}

double path_loss_db(double d_km, SimulationConfig const &cfg)
{
  if (!(d_km >= 0.0)) { throw std::domain_error("path_loss_db: distance must be non-negative"); }
  double const l0 = l0_db(cfg.f_c_mhz, cfg.h_ap, cfg.h_ue);
  double const d0 = cfg.d0_km;
  double const d1 = cfg.d1_km;
  if (d_km > d1) { return -l0 - 35.0 * std::log10(d_km); }
  double const d = d_km > d0 ? d_km : d0;
  return -l0 - 10.0 * std::log10(std::pow(d1, 1.5) * d * d);
}

double noise_power_watts(SimulationConfig const &cfg)
{
  double const dbm = cfg.noise_density_dbm_hz + 10.0 * std::log10(cfg.bandwidth_hz) + cfg.noise_figure_db;
  return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double mmse_variance(double beta, double p_u, double noise_power)
{
  if (beta <= 0.0) { return 0.0; }
  return p_u * beta * beta / (p_u * beta + noise_power);
}

Topology generate_topology(SimulationConfig const &cfg, Rng &rng)
{
  boost::random::uniform_real_distribution<double> coord(0.0, cfg.area_side);
  Topology topo;
  topo.ue_positions.reserve(static_cast<std::size_t>(cfg.num_users));
  for (int k = 0; k < cfg.num_users; ++k) {
    double const x = coord(rng);
    topo.ue_positions.push_back({x, coord(rng)});
  }
  if (cfg.num_aps == 1) {
    topo.ap_positions = {{cfg.area_side / 2.0, cfg.area_side / 2.0}};
  } else {
    topo.ap_positions.reserve(static_cast<std::size_t>(cfg.num_aps));
    for (int q = 0; q < cfg.num_aps; ++q) {
      double const x = coord(rng);
      topo.ap_positions.push_back({x, coord(rng)});
    }
  }
  return topo;
}

LargeScaleState large_scale(Topology const &topo, SimulationConfig const &cfg, Rng &rng)
{
  auto const n_ap = static_cast<Index>(topo.ap_positions.size());
  auto const n_ue = static_cast<Index>(topo.ue_positions.size());
  boost::random::normal_distribution<double> shadowing(0.0, cfg.sigma_sd_db);

  MatrixXd beta(n_ap, n_ue);
  for (Index q = 0; q < n_ap; ++q) {
    auto const &ap = topo.ap_positions[static_cast<std::size_t>(q)];
    for (Index k = 0; k < n_ue; ++k) {
      auto const &ue = topo.ue_positions[static_cast<std::size_t>(k)];
      double const d_km = std::hypot(ap.x - ue.x, ap.y - ue.y) / 1000.0;
      double const x_db = cfg.sigma_sd_db > 0.0 ? shadowing(rng) : 0.0;
      beta(q, k) = std::pow(10.0, (path_loss_db(d_km, cfg) + x_db) / 10.0);
    }
  }
  return large_scale_from_beta(std::move(beta), cfg);
}

LargeScaleState large_scale_from_beta(MatrixXd beta, SimulationConfig const &cfg)
{
  double const noise = noise_power_watts(cfg);
  MatrixXd alpha = beta.unaryExpr([&](double b) { return mmse_variance(b, cfg.p_u, noise); });
  return {std::move(beta), std::move(alpha)};
}

} // namespace umimo
