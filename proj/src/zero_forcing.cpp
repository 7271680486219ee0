#include "umimo/zero_forcing.hpp"

#include <cmath>
#include <string>

namespace umimo {

std::optional<MatrixXcd> zf_pseudo_inverse(MatrixXcd const &g)
{
  Index const k = g.cols();
  MatrixXcd gram = MatrixXcd::Zero(k, k);
  gram.selfadjointView<Eigen::Lower>().rankUpdate(g.adjoint());

  VectorXd const diag = gram.diagonal().real();
  if ((diag.array() <= 0.0).any() || !diag.allFinite()) { return std::nullopt; }
  VectorXd const s = diag.cwiseSqrt().cwiseInverse();

  MatrixXcd scaled = s.asDiagonal() * MatrixXcd(gram.selfadjointView<Eigen::Lower>()) * s.asDiagonal();
  Eigen::LLT<MatrixXcd> llt(scaled);
  if (llt.info() != Eigen::Success || !(llt.rcond() >= kGramRcondThreshold)) { return std::nullopt; }

  // (S W S)^-1 with W the Gram matrix; W^-1 = S (S W S)^-1 S.
  MatrixXcd inv = llt.solve(MatrixXcd::Identity(k, k));
  inv = s.asDiagonal() * inv * s.asDiagonal();
  return MatrixXcd(inv * g.adjoint());
}

VectorXd ZfMoments::phi() const
{
  return static_cast<double>(antennas_per_ap) * delta.rowwise().sum();
}

MatrixXd ZfMoments::chi(LargeScaleState const &ls) const
{
  return static_cast<double>(antennas_per_ap) * (delta * ls.error_variance());
}

double ZfMoments::max_antenna_load() const
{
  return delta.colwise().sum().maxCoeff();
}

ZfMoments estimate_zf_moments(LargeScaleState const &ls, Index antennas_per_ap, int n_samples, Rng &rng)
{
  if (n_samples < 1) { throw std::invalid_argument("estimate_zf_moments: need at least one sample"); }
  Index const n_ap = ls.num_aps();
  Index const n_ue = ls.num_users();
  if (n_ue >= n_ap * antennas_per_ap) {
    throw std::invalid_argument("estimate_zf_moments: zero forcing requires K < M");
  }

  MatrixXd const sd = expand_to_antennas(ls.alpha.cwiseSqrt(), antennas_per_ap);
  MatrixXd acc = MatrixXd::Zero(n_ue, n_ap * antennas_per_ap);
  int const max_redraws = static_cast<int>(std::floor(kMaxRedrawFraction * n_samples));

  ZfMoments out;
  out.antennas_per_ap = antennas_per_ap;
  MatrixXcd g;
  while (out.samples < n_samples) {
    fill_complex_gaussian(sd, g, rng);
    auto a = zf_pseudo_inverse(g);
    if (!a) {
      if (++out.redraws > max_redraws) {
        throw SingularGramError("estimate_zf_moments: " + std::to_string(out.redraws) +
                                " singular Gram samples; M is too close to K for these statistics");
      }
      continue;
    }
    acc += a->cwiseAbs2();
    ++out.samples;
  }

  out.delta.resize(n_ue, n_ap);
  for (Index q = 0; q < n_ap; ++q) {
    out.delta.col(q) = acc.middleCols(q * antennas_per_ap, antennas_per_ap).rowwise().sum();
  }
  out.delta /= static_cast<double>(n_samples) * static_cast<double>(antennas_per_ap);
  return out;
}

ZfChannelSampler::ZfChannelSampler(ChannelStddev sd, int planned_samples)
  : sd_(std::move(sd)), max_redraws_(static_cast<int>(std::floor(kMaxRedrawFraction * planned_samples)))
{
  if (sd_.estimate.cols() >= sd_.estimate.rows()) {
    throw std::invalid_argument("zero forcing requires K < M");
  }
}

std::pair<ChannelDraw, MatrixXcd> ZfChannelSampler::next(Rng &rng)
{
  for (;;) {
    ChannelDraw d = draw_channel(sd_, rng);
    if (auto a = zf_pseudo_inverse(d.g_hat)) { return {std::move(d), std::move(*a)}; }
    if (++redraws_ > max_redraws_) {
      throw SingularGramError("zero forcing: " + std::to_string(redraws_) + " singular Gram samples");
    }
  }
}

} // namespace umimo
