#include "umimo/uplink.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/random/normal_distribution.hpp>

#include "umimo/channel.hpp"
#include "link_detail.hpp"

namespace umimo {

using detail::batches_for;
using detail::safe_ratio;

namespace {

constexpr double kLn2 = 0.69314718055994530942;

} // namespace

SinrVector SinrVector::from_gamma(VectorXd gamma)
{
  VectorXd se = gamma.unaryExpr([](double g) { return std::log1p(g) / kLn2; });
  return {std::move(gamma), std::move(se)};
}

void UplinkPower::validate(Index num_users) const
{
  if (eta.size() != num_users) { throw std::invalid_argument("UplinkPower: expected one coefficient per user"); }
  if ((eta.array() < 0.0).any() || (eta.array() > 1.0).any() || !eta.allFinite()) {
    throw std::invalid_argument("UplinkPower: coefficients must lie in [0, 1]");
  }
}

namespace {

SinrVector mf_sinr(LargeScaleState const &ls, UplinkPower const &power, SimulationConfig const &cfg,
                   bool subtract_fluctuation)
{
  power.validate(ls.num_users());
  double const nt = cfg.antennas_per_ap;
  double const noise = noise_power_watts(cfg);
  VectorXd const sum_alpha = ls.alpha.colwise().sum().transpose();
  VectorXd const sum_alpha2 = ls.alpha.array().square().colwise().sum().transpose();
  // cross(k, i) = sum_q alpha_qk beta_qi
  VectorXd const interference = (ls.alpha.transpose() * ls.beta) * power.eta;

  VectorXd gamma(ls.num_users());
  for (Index k = 0; k < gamma.size(); ++k) {
    double const num = cfg.p_u * power.eta(k) * nt * nt * sum_alpha(k) * sum_alpha(k);
    double den = cfg.p_u * nt * interference(k) + noise * nt * sum_alpha(k);
    if (subtract_fluctuation) { den -= cfg.p_u * power.eta(k) * nt * sum_alpha2(k); }
    gamma(k) = sum_alpha(k) > 0.0 ? safe_ratio(num, den) : 0.0;
  }
  return SinrVector::from_gamma(std::move(gamma));
}

} // namespace

SinrVector mf_sinr_full_csi(LargeScaleState const &ls, UplinkPower const &power, SimulationConfig const &cfg)
{
  return mf_sinr(ls, power, cfg, true);
}

SinrVector mf_sinr_stats_only(LargeScaleState const &ls, UplinkPower const &power, SimulationConfig const &cfg)
{
  return mf_sinr(ls, power, cfg, false);
}

VectorXd estimate_phi(LargeScaleState const &ls, SimulationConfig const &cfg, Rng &rng)
{
  return estimate_zf_moments(ls, cfg.antennas_per_ap, cfg.n_channel_samples, rng).phi();
}

SinrVector zf_sinr(LargeScaleState const &ls, UplinkPower const &power, VectorXd const &phi,
                   SimulationConfig const &cfg)
{
  power.validate(ls.num_users());
  if (phi.size() != ls.num_users()) { throw std::invalid_argument("zf_sinr: phi must have one entry per user"); }
  if (!(phi.array() > 0.0).all() || !phi.allFinite()) {
    throw std::invalid_argument("zf_sinr: phi must be finite and strictly positive");
  }
  double const noise = noise_power_watts(cfg);
  double const error_total =
    cfg.antennas_per_ap * (ls.error_variance().colwise().sum().transpose().dot(power.eta));
  VectorXd gamma(ls.num_users());
  for (Index k = 0; k < gamma.size(); ++k) {
    gamma(k) = safe_ratio(cfg.p_u * power.eta(k), phi(k) * (cfg.p_u * error_total + noise));
  }
  return SinrVector::from_gamma(std::move(gamma));
}

SinrVector zf_sinr_per_antenna(LargeScaleState const &ls, UplinkPower const &power, ZfMoments const &moments,
                               SimulationConfig const &cfg)
{
  power.validate(ls.num_users());
  double const noise = noise_power_watts(cfg);
  VectorXd const phi = moments.phi();
  VectorXd const leakage = moments.chi(ls) * power.eta;
  VectorXd gamma(ls.num_users());
  for (Index k = 0; k < gamma.size(); ++k) {
    gamma(k) = safe_ratio(cfg.p_u * power.eta(k), cfg.p_u * leakage(k) + phi(k) * noise);
  }
  return SinrVector::from_gamma(std::move(gamma));
}

MfTerms mf_terms(LargeScaleState const &ls, UplinkPower const &power, SimulationConfig const &cfg)
{
  power.validate(ls.num_users());
  double const nt = cfg.antennas_per_ap;
  double const noise = noise_power_watts(cfg);
  Index const k_users = ls.num_users();
  VectorXd const sum_alpha = ls.alpha.colwise().sum().transpose();
  MatrixXd const cross = ls.alpha.transpose() * ls.beta; // (k, i) = sum_q alpha_qk beta_qi

  MfTerms t;
  t.signal = cfg.p_u * nt * nt * power.eta.cwiseProduct(sum_alpha.cwiseAbs2());
  t.estimation = cfg.p_u * nt *
                 power.eta.cwiseProduct((ls.error_variance().cwiseProduct(ls.alpha)).colwise().sum().transpose());
  t.interference.resize(k_users);
  for (Index k = 0; k < k_users; ++k) {
    double acc = 0.0;
    for (Index i = 0; i < k_users; ++i) {
      if (i != k) { acc += power.eta(i) * cross(k, i); }
    }
    t.interference(k) = cfg.p_u * nt * acc;
  }
  t.noise = noise * nt * sum_alpha;
  t.signal_fluctuation =
    cfg.p_u * nt * power.eta.cwiseProduct(ls.alpha.array().square().colwise().sum().matrix().transpose());
  return t;
}

VectorXcd draw_qpsk(Index n, Rng &rng)
{
  double const a = 1.0 / std::sqrt(2.0);
  VectorXcd x(n);
  for (Index i = 0; i < n; ++i) {
    auto const bits = rng();
    x(i) = {(bits & 1U) ? a : -a, (bits & 2U) ? a : -a};
  }
  return x;
}

VectorXcd draw_noise(Index n, double variance, Rng &rng)
{
  VectorXcd w;
  Matrix<std::complex<double>> tmp;
  fill_complex_gaussian(MatrixXd::Constant(n, 1, std::sqrt(variance)), tmp, rng);
  w = tmp.col(0);
  return w;
}

VectorXcd uplink_detect(MatrixXcd const &detector, MatrixXcd const &g_true, VectorXd const &eta,
                        VectorXcd const &x, VectorXcd const &noise, double p_u)
{
  VectorXcd const tx = std::sqrt(p_u) * (eta.cwiseSqrt().cast<std::complex<double>>().cwiseProduct(x));
  return detector * (g_true * tx + noise);
}

MfOracle mf_variance_oracle(LargeScaleState const &ls, UplinkPower const &power, SimulationConfig const &cfg,
                            Rng &rng)
{
  power.validate(ls.num_users());
  Index const k_users = ls.num_users();
  int const n = cfg.n_channel_samples;
  double const noise = noise_power_watts(cfg);
  ChannelStddev const sd = ChannelStddev::from(ls, cfg.antennas_per_ap);
  VectorXd const amp = (cfg.p_u * power.eta).cwiseSqrt();

  constexpr Index kQ = 5; // mean gain, |S0|^2, |I1|^2, |I2|^2, |I3|^2
  BatchedSums sums(kQ * k_users, n, batches_for(n));
  MfOracle out;
  out.signal_identically_zero.assign(static_cast<std::size_t>(k_users), true);
  out.interference_identically_zero.assign(static_cast<std::size_t>(k_users), true);

  VectorXd q(kQ * k_users);
  for (int s = 0; s < n; ++s) {
    ChannelDraw const d = draw_channel(sd, rng);
    VectorXcd const x = draw_qpsk(k_users, rng);
    VectorXcd const w = draw_noise(d.g_hat.rows(), noise, rng);
    MatrixXcd const hg = d.g_hat.adjoint() * d.g_true;
    VectorXcd const hn = d.g_hat.adjoint() * w;
    for (Index k = 0; k < k_users; ++k) {
      double const norm2 = d.g_hat.col(k).squaredNorm();
      std::complex<double> const s0 = amp(k) * norm2 * x(k);
      std::complex<double> const i1 = amp(k) * d.g_hat.col(k).dot(d.g_err.col(k)) * x(k);
      std::complex<double> i2 = 0.0;
      for (Index i = 0; i < k_users; ++i) {
        if (i != k) { i2 += amp(i) * hg(k, i) * x(i); }
      }
      auto const uk = static_cast<std::size_t>(k);
      if (s0 != 0.0 || i1 != 0.0) { out.signal_identically_zero[uk] = false; }
      if (i2 != 0.0) { out.interference_identically_zero[uk] = false; }
      q(kQ * k + 0) = (s0 * std::conj(x(k))).real();
      q(kQ * k + 1) = std::norm(s0);
      q(kQ * k + 2) = std::norm(i1);
      q(kQ * k + 3) = std::norm(i2);
      q(kQ * k + 4) = std::norm(hn(k));
    }
    sums.add(s, q);
  }

  for (Index k = 0; k < k_users; ++k) {
    auto term = [&](Index j) { return sums.estimate([=](VectorXd const &m) { return m(kQ * k + j); }); };
    out.signal_coherent.push_back(sums.estimate([=](VectorXd const &m) { return m(kQ * k) * m(kQ * k); }));
    out.signal_second_moment.push_back(term(1));
    out.estimation.push_back(term(2));
    out.interference.push_back(term(3));
    out.noise.push_back(term(4));
    out.sinr_full_csi.push_back(sums.estimate([=](VectorXd const &m) {
      return safe_ratio(m(kQ * k) * m(kQ * k), m(kQ * k + 2) + m(kQ * k + 3) + m(kQ * k + 4));
    }));
    out.sinr_stats_only.push_back(sums.estimate([=](VectorXd const &m) {
      double const coh = m(kQ * k) * m(kQ * k);
      return safe_ratio(coh, m(kQ * k + 1) - coh + m(kQ * k + 2) + m(kQ * k + 3) + m(kQ * k + 4));
    }));
  }
  return out;
}

EmpiricalSinr simulate_uplink(LargeScaleState const &ls, UplinkPower const &power, Detector detector,
                              SimulationConfig const &cfg, Rng &rng)
{
  power.validate(ls.num_users());
  Index const k_users = ls.num_users();
  int const n = cfg.n_channel_samples;
  double const noise = noise_power_watts(cfg);
  ChannelStddev sd = ChannelStddev::from(ls, cfg.antennas_per_ap);

  std::optional<ZfChannelSampler> sampler;
  if (detector == Detector::ZeroForcing) { sampler.emplace(sd, n); }

  detail::SinrAccumulator acc(k_users, n);
  for (int s = 0; s < n; ++s) {
    ChannelDraw d;
    MatrixXcd a;
    if (sampler) {
      std::tie(d, a) = sampler->next(rng);
    } else {
      d = draw_channel(sd, rng);
      a = d.g_hat.adjoint();
    }
    VectorXcd const x = draw_qpsk(k_users, rng);
    VectorXcd const w = draw_noise(d.g_hat.rows(), noise, rng);
    acc.add(s, uplink_detect(a, d.g_true, power.eta, x, w, cfg.p_u), x);
  }
  return acc.result();
}

EmpiricalSinr simulate_uplink_zf(LargeScaleState const &ls, UplinkPower const &power, SimulationConfig const &cfg,
                                 Rng &rng)
{
  return simulate_uplink(ls, power, Detector::ZeroForcing, cfg, rng);
}

} // namespace umimo
