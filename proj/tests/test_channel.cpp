#include <doctest.h>

#include "support.hpp"
#include "umimo/channel.hpp"

using namespace umimo;

TEST_CASE("expand_to_antennas")
{
  MatrixXd per_ap(2, 3);
  per_ap << 1, 2, 3, 4, 5, 6;
  CHECK(expand_to_antennas(per_ap, 1) == per_ap);
  MatrixXd expected(4, 3);
  expected << 1, 2, 3, 1, 2, 3, 4, 5, 6, 4, 5, 6;
  CHECK(expand_to_antennas(per_ap, 2) == expected);
  CHECK_THROWS_AS(expand_to_antennas(per_ap, 0), std::invalid_argument);
}

TEST_CASE("ChannelStddev rejects alpha above beta")
{
  LargeScaleState ls{MatrixXd::Constant(2, 2, 1.0), MatrixXd::Constant(2, 2, 0.5)};
  CHECK_NOTHROW(ChannelStddev::from(ls, 3));
  ls.alpha(1, 0) = 1.5;
  CHECK_THROWS_AS(ChannelStddev::from(ls, 3), std::invalid_argument);
}

TEST_CASE("estimate plus error is the true channel")
{
  auto const cfg = test::layout(4, 2, 3);
  Rng rng(1);
  auto const ls = test::random_state(cfg, rng);
  auto const d = draw_channel(ls, cfg, rng);
  CHECK(d.g_true.rows() == 8);
  CHECK(d.g_true.cols() == 3);
  CHECK(d.g_true == d.g_hat + d.g_err);
}

TEST_CASE("perfect CSI leaves no error")
{
  auto const cfg = test::layout(2, 4, 2);
  auto const ls = test::uniform_state(2, 2, 1.0, 1.0);
  Rng rng(2);
  auto const d = draw_channel(ls, cfg, rng);
  CHECK(d.g_err.isZero(0.0));
  CHECK(d.g_true == d.g_hat);
}

TEST_CASE("second moments, circular symmetry and orthogonality")
{
  // One antenna per user column: estimate variance 0.3, error variance 0.7.
  auto const ls = test::uniform_state(1, 1, 0.3, 1.0);
  ChannelStddev const sd = ChannelStddev::from(ls, 1);
  Rng rng(3);
  int const n = 200000;
  double s_hat = 0, s_err = 0;
  std::complex<double> pseudo{0, 0}, cross{0, 0};
  for (int i = 0; i < n; ++i) {
    auto const d = draw_channel(sd, rng);
    std::complex<double> const h = d.g_hat(0, 0), e = d.g_err(0, 0);
    s_hat += std::norm(h);
    s_err += std::norm(e);
    pseudo += h * h;
    cross += h * std::conj(e);
  }
  // |z|^2 is exponential with sd equal to its mean; products of independent
  // CN(0, a), CN(0, b) have E|.|^2 = a b.
  double const se = 1.0 / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(s_hat / n - 0.3) < 3 * 0.3 * se);
  CHECK(std::abs(s_err / n - 0.7) < 3 * 0.7 * se);
  CHECK(std::abs(pseudo.real() / n) < 3 * 0.3 * se);
  CHECK(std::abs(pseudo.imag() / n) < 3 * 0.3 * se);
  double const cross_sd = std::sqrt(0.3 * 0.7 / 2.0) * se;
  CHECK(std::abs(cross.real() / n) < 3 * cross_sd);
  CHECK(std::abs(cross.imag() / n) < 3 * cross_sd);
}

TEST_CASE("antennas of one AP share statistics")
{
  LargeScaleState ls{MatrixXd(2, 1), MatrixXd(2, 1)};
  ls.beta << 4.0, 1.0;
  ls.alpha << 1.0, 0.25;
  ChannelStddev const sd = ChannelStddev::from(ls, 3);
  VectorXd expected_hat(6), expected_err(6);
  expected_hat << 1, 1, 1, 0.5, 0.5, 0.5;
  expected_err << std::sqrt(3.0), std::sqrt(3.0), std::sqrt(3.0), std::sqrt(0.75), std::sqrt(0.75), std::sqrt(0.75);
  CHECK(sd.estimate.col(0).isApprox(expected_hat, 1e-15));
  CHECK(sd.error.col(0).isApprox(expected_err, 1e-15));
}

TEST_CASE("same engine state, same draw")
{
  auto const cfg = test::layout(8, 1, 4);
  Rng a(9), b(9);
  auto const ls = test::uniform_state(8, 4, 0.5, 1.0);
  CHECK(draw_channel(ls, cfg, a).g_true == draw_channel(ls, cfg, b).g_true);
}
