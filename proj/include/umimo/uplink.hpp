#pragma once

#include <vector>

#include "umimo/batch_stats.hpp"
#include "umimo/scenario.hpp"
#include "umimo/zero_forcing.hpp"

namespace umimo {

/// Per-user effective SINR (linear) and the matching spectral efficiency
/// log2(1 + gamma) in bits/s/Hz.
struct SinrVector
{
  VectorXd gamma;
  VectorXd se;

  static SinrVector from_gamma(VectorXd gamma);
};

/// Link-level (simulated) SINR with a batch-means standard error per user.
struct EmpiricalSinr
{
  VectorXd gamma;
  VectorXd std_error;
};

struct UplinkPower
{
  VectorXd eta; // K, each in [0, 1]

  void validate(Index num_users) const;
};

// --- closed forms -----------------------------------------------------------

/// Matched filtering with the estimates known at the receiver. Users whose
/// estimates vanish on every antenna get gamma = 0.
SinrVector mf_sinr_full_csi(LargeScaleState const &ls, UplinkPower const &power, SimulationConfig const &cfg);

/// Matched filtering from channel statistics only; the fluctuation of
/// ||g_hat_k||^2 around its mean joins the interference.
SinrVector mf_sinr_stats_only(LargeScaleState const &ls, UplinkPower const &power, SimulationConfig const &cfg);

/// phi_k = E[(G_hat^H G_hat)^{-1}]_kk over cfg.n_channel_samples draws.
VectorXd estimate_phi(LargeScaleState const &ls, SimulationConfig const &cfg, Rng &rng);

/// Zero-forcing detection SINR in the published closed form
///   p_u eta_k / (phi_k (p_u sum_i eta_i N_t sum_q (beta_qi - alpha_qi) + noise)).
/// The error term bounds sum_m (beta_mi - alpha_mi) E|a_km|^2 from above by
/// phi_k sum_m (beta_mi - alpha_mi), so this under-reports the link-level SINR
/// whenever estimation error is not negligible (see zf_sinr_per_antenna).
SinrVector zf_sinr(LargeScaleState const &ls, UplinkPower const &power, VectorXd const &phi,
                   SimulationConfig const &cfg);

/// Zero-forcing detection SINR with the error term weighted per antenna by
/// E|a_km|^2, which is what the link-level detector actually sees.
SinrVector zf_sinr_per_antenna(LargeScaleState const &ls, UplinkPower const &power, ZfMoments const &moments,
                               SimulationConfig const &cfg);

// --- oracles ----------------------------------------------------------------

/// Closed-form second moments of the four matched-filter terms of user k:
/// desired signal, estimation-error leakage, inter-user interference, noise.
struct MfTerms
{
  VectorXd signal;       // p_u eta_k N_t^2 (sum_q alpha_qk)^2
  VectorXd estimation;   // p_u eta_k N_t sum_q (beta_qk - alpha_qk) alpha_qk
  VectorXd interference; // p_u N_t sum_{i != k} eta_i sum_q beta_qi alpha_qk
  VectorXd noise;        // noise N_t sum_q alpha_qk
  VectorXd signal_fluctuation; // p_u eta_k N_t sum_q alpha_qk^2 = p_u eta_k Var ||g_hat_k||^2
};

MfTerms mf_terms(LargeScaleState const &ls, UplinkPower const &power, SimulationConfig const &cfg);

/// Monte Carlo estimates of the same terms from simulated estimates, errors,
/// QPSK symbols and receiver noise. `signal_coherent` is |E[S0 x_k^*]|^2, the
/// power of the desired term's mean gain; `signal_second_moment` is E|S0|^2,
/// which exceeds it by the fluctuation term. The two SINR estimates are the
/// full-CSI ratio signal_coherent / (I1 + I2 + I3) and the statistics-only
/// ratio signal_coherent / (everything else).
struct MfOracle
{
  std::vector<Estimate> signal_coherent;
  std::vector<Estimate> signal_second_moment;
  std::vector<Estimate> estimation;
  std::vector<Estimate> interference;
  std::vector<Estimate> noise;
  std::vector<Estimate> sinr_full_csi;
  std::vector<Estimate> sinr_stats_only;
  /// True when S0 and I1 were identically zero in every sample for that user.
  std::vector<bool> signal_identically_zero;
  std::vector<bool> interference_identically_zero;
};

MfOracle mf_variance_oracle(LargeScaleState const &ls, UplinkPower const &power, SimulationConfig const &cfg,
                            Rng &rng);

enum class Detector { MatchedFilter, ZeroForcing };

/// Link-level uplink: y = A (sqrt(p_u) G D_eta^{1/2} x + n) with A built from
/// the estimates (G_hat^H or its pseudo-inverse). Empirical SINR is
/// |E[y_k x_k^*]|^2 / (E|y_k|^2 - |E[y_k x_k^*]|^2) over cfg.n_channel_samples
/// draws. Singular Gram samples are redrawn for ZF.
EmpiricalSinr simulate_uplink(LargeScaleState const &ls, UplinkPower const &power, Detector detector,
                              SimulationConfig const &cfg, Rng &rng);

EmpiricalSinr simulate_uplink_zf(LargeScaleState const &ls, UplinkPower const &power, SimulationConfig const &cfg,
                                 Rng &rng);

/// One received vector for a given channel, symbols and noise: A (sqrt(p_u) G D x + n).
VectorXcd uplink_detect(MatrixXcd const &detector, MatrixXcd const &g_true, VectorXd const &eta,
                        VectorXcd const &x, VectorXcd const &noise, double p_u);

/// Unit-power QPSK symbols.
VectorXcd draw_qpsk(Index n, Rng &rng);
VectorXcd draw_noise(Index n, double variance, Rng &rng);

} // namespace umimo
