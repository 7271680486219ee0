#include "umimo/channel.hpp"

namespace umimo {

ChannelStddev ChannelStddev::from(LargeScaleState const &ls, Index antennas_per_ap)
{
  if ((ls.alpha.array() < 0.0).any() || (ls.beta.array() < ls.alpha.array()).any()) {
    throw std::invalid_argument("draw_channel: requires 0 <= alpha <= beta for every AP-user pair");
  }
  return {expand_to_antennas(ls.alpha.cwiseSqrt(), antennas_per_ap),
          expand_to_antennas(ls.error_variance().cwiseSqrt(), antennas_per_ap)};
}

ChannelDraw draw_channel(ChannelStddev const &sd, Rng &rng)
{
  ChannelDraw d;
  fill_complex_gaussian(sd.estimate, d.g_hat, rng);
  fill_complex_gaussian(sd.error, d.g_err, rng);
  d.g_true = d.g_hat + d.g_err;
  return d;
}

ChannelDraw draw_channel(LargeScaleState const &ls, SimulationConfig const &cfg, Rng &rng)
{
  return draw_channel(ChannelStddev::from(ls, cfg.antennas_per_ap), rng);
}

} // namespace umimo
