#pragma once

#include <stdexcept>

#include <boost/random/normal_distribution.hpp>

#include "umimo/scenario.hpp"
#include "umimo/types.hpp"

namespace umimo {

/// One small-scale realization. All matrices are M x K (antennas x users);
/// `g_true == g_hat + g_err` exactly.
struct ChannelDraw
{
  MatrixXcd g_hat;
  MatrixXcd g_err;
  MatrixXcd g_true;
};

/// Replicates each AP row `n_t` times in order: rows [a; b] -> [a; a; b; b].
template <typename Derived>
Matrix<typename Derived::Scalar> expand_to_antennas(Eigen::MatrixBase<Derived> const &per_ap, Index n_t)
{
  if (n_t < 1) { throw std::invalid_argument("expand_to_antennas: N_t must be >= 1"); }
  Matrix<typename Derived::Scalar> out(per_ap.rows() * n_t, per_ap.cols());
  for (Index q = 0; q < per_ap.rows(); ++q) {
    out.middleRows(q * n_t, n_t) = per_ap.row(q).replicate(n_t, 1);
  }
  return out;
}

/// Fills `out` with independent circularly-symmetric complex Gaussians whose
/// per-entry standard deviation (of the complex variable) is `stddev(m, k)`.
template <typename Derived, typename Scalar>
void fill_complex_gaussian(Eigen::MatrixBase<Derived> const &stddev, Matrix<std::complex<Scalar>> &out, Rng &rng)
{
  boost::random::normal_distribution<Scalar> normal(Scalar(0), Scalar(1));
  out.resize(stddev.rows(), stddev.cols());
  Scalar const half = Scalar(1) / std::sqrt(Scalar(2));
  for (Index k = 0; k < out.cols(); ++k) {
    for (Index m = 0; m < out.rows(); ++m) {
      Scalar const s = stddev(m, k) * half;
      Scalar const re = normal(rng);
      Scalar const im = normal(rng);
      out(m, k) = {s * re, s * im};
    }
  }
}

/// Per-antenna standard deviations of the estimate (sqrt(alpha)) and error
/// (sqrt(beta - alpha)). Throws std::invalid_argument if beta < alpha anywhere.
struct ChannelStddev
{
  MatrixXd estimate; // M x K
  MatrixXd error;    // M x K

  static ChannelStddev from(LargeScaleState const &ls, Index antennas_per_ap);
};

ChannelDraw draw_channel(LargeScaleState const &ls, SimulationConfig const &cfg, Rng &rng);

/// Same sampling as draw_channel with the standard deviations precomputed,
/// for inner loops that draw many realizations of one state.
ChannelDraw draw_channel(ChannelStddev const &sd, Rng &rng);

} // namespace umimo
