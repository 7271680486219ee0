#pragma once

#include <optional>
#include <stdexcept>

#include "umimo/channel.hpp"
#include "umimo/scenario.hpp"
#include "umimo/types.hpp"

namespace umimo {

/// Reciprocal condition number (of the diagonally equilibrated Gram matrix)
/// below which a channel sample counts as singular and is redrawn.
inline constexpr double kGramRcondThreshold = 1e-12;

/// Fraction of redrawn samples above which estimation gives up.
inline constexpr double kMaxRedrawFraction = 0.01;

class SingularGramError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// K x M zero-forcing matrix (G^H G)^{-1} G^H of an M x K channel, computed
/// by a Cholesky solve on the equilibrated Gram matrix. Empty when the Gram
/// matrix is singular per kGramRcondThreshold.
std::optional<MatrixXcd> zf_pseudo_inverse(MatrixXcd const &g);

/// Second moments of the zero-forcing matrix entries for one large-scale
/// state. `delta(k, q)` is E|A(k, m)|^2 for any antenna m of AP q; antennas of
/// one AP are exchangeable, so their samples are pooled.
struct ZfMoments
{
  MatrixXd delta;          // K x N_AP
  Index antennas_per_ap = 1;
  int samples = 0;
  int redraws = 0;

  /// phi_k = E[(G^H G)^{-1}]_kk, the squared norm of detector row k.
  VectorXd phi() const;

  /// chi(i, k) = E[ sum_m |A(i, m)|^2 (beta_mk - alpha_mk) ].
  MatrixXd chi(LargeScaleState const &ls) const;

  /// Largest per-antenna sum over users of delta.
  double max_antenna_load() const;
};

/// Monte Carlo estimate over `n_samples` draws of the channel estimate.
/// Singular samples are redrawn; throws SingularGramError when more than
/// kMaxRedrawFraction of the requested samples had to be redrawn.
ZfMoments estimate_zf_moments(LargeScaleState const &ls, Index antennas_per_ap, int n_samples, Rng &rng);

/// Draws one ZF-usable channel, redrawing singular samples. Shared by the
/// link-level simulators so every ZF consumer uses one redraw policy.
class ZfChannelSampler
{
public:
  ZfChannelSampler(ChannelStddev sd, int planned_samples);

  /// Returns the channel and its pseudo-inverse computed from g_hat.
  std::pair<ChannelDraw, MatrixXcd> next(Rng &rng);
  int redraws() const { return redraws_; }

private:
  ChannelStddev sd_;
  int max_redraws_;
  int redraws_ = 0;
};

} // namespace umimo
