#include "umimo/downlink.hpp"

#include <stdexcept>

#include "link_detail.hpp"
#include "umimo/channel.hpp"

namespace umimo {

using detail::safe_ratio;

namespace {

// Slack on the per-antenna budget for coefficients built in floating point.
constexpr double kBudgetSlack = 1e-9;

} // namespace

void DownlinkPowerCBF::validate(LargeScaleState const &ls) const
{
  if (eta.rows() != ls.num_aps() || eta.cols() != ls.num_users()) {
    throw std::invalid_argument("DownlinkPowerCBF: expected an N_AP x K coefficient matrix");
  }
  if ((eta.array() < 0.0).any() || !eta.allFinite()) {
    throw std::invalid_argument("DownlinkPowerCBF: coefficients must be finite and non-negative");
  }
  VectorXd const load = eta.cwiseProduct(ls.alpha).rowwise().sum();
  if ((load.array() > 1.0 + kBudgetSlack).any()) {
    throw std::invalid_argument("DownlinkPowerCBF: per-antenna budget sum_k eta*alpha <= 1 violated");
  }
}

void DownlinkPowerZFP::validate(Index num_users) const
{
  if (eta.size() != num_users) { throw std::invalid_argument("DownlinkPowerZFP: expected one coefficient per user"); }
  if ((eta.array() < 0.0).any() || !eta.allFinite()) {
    throw std::invalid_argument("DownlinkPowerZFP: coefficients must be finite and non-negative");
  }
}

SinrVector cbf_sinr(LargeScaleState const &ls, DownlinkPowerCBF const &power, SimulationConfig const &cfg)
{
  power.validate(ls);
  double const nt = cfg.antennas_per_ap;
  double const noise = noise_power_watts(cfg);
  VectorXd const coherent = (power.eta.cwiseSqrt().cwiseProduct(ls.alpha)).colwise().sum().transpose();
  VectorXd const ap_load = power.eta.cwiseProduct(ls.alpha).rowwise().sum(); // per AP, over users
  VectorXd const spread = ls.beta.transpose() * ap_load;                      // per user

  VectorXd gamma(ls.num_users());
  for (Index k = 0; k < gamma.size(); ++k) {
    gamma(k) = safe_ratio(cfg.p_d * nt * nt * coherent(k) * coherent(k), noise + cfg.p_d * nt * spread(k));
  }
  return SinrVector::from_gamma(std::move(gamma));
}

MatrixXd estimate_chi(LargeScaleState const &ls, SimulationConfig const &cfg, Rng &rng)
{
  return estimate_zf_moments(ls, cfg.antennas_per_ap, cfg.n_channel_samples, rng).chi(ls);
}

SinrVector zfp_sinr(DownlinkPowerZFP const &power, MatrixXd const &chi, SimulationConfig const &cfg)
{
  Index const k_users = chi.rows();
  if (chi.cols() != k_users) { throw std::invalid_argument("zfp_sinr: chi must be K x K"); }
  power.validate(k_users);
  double const noise = noise_power_watts(cfg);
  VectorXd const leak = chi.transpose() * power.eta; // (k) = sum_i eta_i chi(i, k)
  VectorXd gamma(k_users);
  for (Index k = 0; k < k_users; ++k) {
    gamma(k) = safe_ratio(cfg.p_d * power.eta(k), noise + cfg.p_d * leak(k));
  }
  return SinrVector::from_gamma(std::move(gamma));
}

SinrVector zfp_sinr_cellular(DownlinkPowerZFP const &power, LargeScaleState const &ls, VectorXd const &phi,
                             SimulationConfig const &cfg)
{
  if (ls.num_aps() != 1) { throw std::invalid_argument("zfp_sinr_cellular: requires a single AP (N_AP = 1)"); }
  power.validate(ls.num_users());
  if (phi.size() != ls.num_users()) { throw std::invalid_argument("zfp_sinr_cellular: phi size must be K"); }
  double const noise = noise_power_watts(cfg);
  double const load = power.eta.dot(phi);
  VectorXd gamma(ls.num_users());
  for (Index k = 0; k < gamma.size(); ++k) {
    double const err = ls.beta(0, k) - ls.alpha(0, k);
    gamma(k) = safe_ratio(cfg.p_d * power.eta(k), noise + cfg.p_d * err * load);
  }
  return SinrVector::from_gamma(std::move(gamma));
}

MatrixXcd cbf_precoder(MatrixXcd const &g_hat, MatrixXd const &eta_per_antenna)
{
  return g_hat.conjugate().cwiseProduct(eta_per_antenna.cwiseSqrt().cast<std::complex<double>>());
}

MatrixXcd zfp_precoder(MatrixXcd const &zf_pseudo_inverse, VectorXd const &eta)
{
  // G_hat^T W = I with W = A^T, so column k delivers sqrt(eta_k) to user k only.
  return zf_pseudo_inverse.transpose() * eta.cwiseSqrt().cast<std::complex<double>>().asDiagonal();
}

namespace {

template <typename PrecoderFn>
EmpiricalSinr simulate(LargeScaleState const &ls, SimulationConfig const &cfg, Rng &rng, bool zero_forcing,
                       PrecoderFn &&precoder)
{
  Index const k_users = ls.num_users();
  int const n = cfg.n_channel_samples;
  double const noise = noise_power_watts(cfg);
  double const amp = std::sqrt(cfg.p_d);
  ChannelStddev sd = ChannelStddev::from(ls, cfg.antennas_per_ap);
  std::optional<ZfChannelSampler> sampler;
  if (zero_forcing) { sampler.emplace(sd, n); }

  detail::SinrAccumulator acc(k_users, n);
  for (int s = 0; s < n; ++s) {
    ChannelDraw d;
    MatrixXcd b;
    if (sampler) {
      MatrixXcd a;
      std::tie(d, a) = sampler->next(rng);
      b = precoder(d, a);
    } else {
      d = draw_channel(sd, rng);
      b = precoder(d, MatrixXcd());
    }
    VectorXcd const u = draw_qpsk(k_users, rng);
    VectorXcd const w = draw_noise(k_users, noise, rng);
    VectorXcd const r = amp * (d.g_true.transpose() * (b * u)) + w;
    acc.add(s, r, u);
  }
  return acc.result();
}

} // namespace

EmpiricalSinr simulate_downlink(LargeScaleState const &ls, DownlinkPowerCBF const &power,
                                SimulationConfig const &cfg, Rng &rng)
{
  power.validate(ls);
  MatrixXd const eta_m = expand_to_antennas(power.eta, cfg.antennas_per_ap);
  return simulate(ls, cfg, rng, false,
                  [&](ChannelDraw const &d, MatrixXcd const &) { return cbf_precoder(d.g_hat, eta_m); });
}

EmpiricalSinr simulate_downlink(LargeScaleState const &ls, DownlinkPowerZFP const &power,
                                SimulationConfig const &cfg, Rng &rng)
{
  power.validate(ls.num_users());
  return simulate(ls, cfg, rng, true,
                  [&](ChannelDraw const &, MatrixXcd const &a) { return zfp_precoder(a, power.eta); });
}

AntennaPower measure_zfp_antenna_power(LargeScaleState const &ls, DownlinkPowerZFP const &power,
                                       SimulationConfig const &cfg, Rng &rng)
{
  power.validate(ls.num_users());
  int const n = cfg.n_channel_samples;
  ZfChannelSampler sampler(ChannelStddev::from(ls, cfg.antennas_per_ap), n);
  Index const m = ls.num_aps() * cfg.antennas_per_ap;
  VectorXd sum = VectorXd::Zero(m);
  VectorXd sum2 = VectorXd::Zero(m);
  for (int s = 0; s < n; ++s) {
    auto const [d, a] = sampler.next(rng);
    VectorXd const p = cfg.p_d * zfp_precoder(a, power.eta).rowwise().squaredNorm();
    sum += p;
    sum2 += p.cwiseAbs2();
  }
  AntennaPower out;
  out.mean = sum / n;
  VectorXd const var = ((sum2 / n) - out.mean.cwiseAbs2()).cwiseMax(0.0) * (n / std::max(1.0, n - 1.0));
  out.std_error = (var / n).cwiseSqrt();
  return out;
}

} // namespace umimo
