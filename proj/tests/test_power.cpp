#include <doctest.h>

#include <sstream>

#include "support.hpp"
#include "umimo/channel.hpp"
#include "umimo/downlink.hpp"
#include "umimo/power.hpp"
#include "umimo/zero_forcing.hpp"

using namespace umimo;

TEST_CASE("uplink full power")
{
  CHECK(ul_full_power(16).eta == VectorXd::Ones(16));
  CHECK(ul_full_power(1).eta == VectorXd::Ones(1));
  CHECK_NOTHROW(ul_full_power(16).validate(16));
  CHECK_THROWS_AS(ul_full_power(0), std::invalid_argument);
}

TEST_CASE("CBF full power")
{
  SUBCASE("single user")
  {
    auto const p = cbf_full_power(test::uniform_state(1, 1, 0.5, 1.0));
    CHECK(p.eta(0, 0) == 2.0);
  }
  SUBCASE("two APs, reciprocal row sums")
  {
    LargeScaleState ls{MatrixXd::Ones(2, 2), MatrixXd(2, 2)};
    ls.alpha << 0.2, 0.3, 0.1, 0.1;
    MatrixXd expected(2, 2);
    expected << 2, 2, 5, 5;
    CHECK(cbf_full_power(ls).eta.isApprox(expected, 1e-15));
  }
  SUBCASE("budget met with equality")
  {
    auto const cfg = test::layout(6, 2, 4);
    Rng rng(1);
    auto const ls = test::random_state(cfg, rng);
    auto const p = cbf_full_power(ls);
    VectorXd const load = p.eta.cwiseProduct(ls.alpha).rowwise().sum();
    CHECK((load.array() - 1.0).abs().maxCoeff() < 1e-14);
  }
  SUBCASE("silent AP")
  {
    LargeScaleState ls = test::uniform_state(3, 2, 0.5, 1.0);
    ls.alpha.row(1).setZero();
    std::ostringstream captured;
    auto *old = std::clog.rdbuf(captured.rdbuf());
    auto const p = cbf_full_power(ls);
    std::clog.rdbuf(old);
    CHECK(p.eta.row(1).isZero(0.0));
    CHECK(p.eta(0, 0) == 1.0);
    CHECK(captured.str().find("warning") != std::string::npos);
  }
}

TEST_CASE("ZFP common coefficient")
{
  SUBCASE("homogeneity")
  {
    auto cfg = test::layout(4, 2, 3);
    cfg.n_channel_samples = 300;
    Rng rng(2);
    auto ls = test::random_state(cfg, rng);
    Rng a(3), b(3);
    double const base = zfp_subopt_power(ls, cfg, a).eta(0);
    ls.alpha *= 4.0;
    ls.beta *= 4.0;
    CHECK(test::within(zfp_subopt_power(ls, cfg, b).eta(0), 4.0 * base, 1e-10));
  }
  SUBCASE("cellular symmetric, against an independent brute-force average")
  {
    auto cfg = test::layout(1, 8, 2);
    cfg.n_channel_samples = 20000;
    auto const ls = test::uniform_state(1, 2, 2e-13, 5e-13);
    Rng rng(4);
    double const eta = zfp_subopt_power(ls, cfg, rng).eta(0);

    // Fresh draws through the Moore-Penrose inverse of an SVD-based solver.
    Rng fresh(5);
    MatrixXcd g;
    VectorXd load = VectorXd::Zero(8);
    int const n = 20000;
    for (int s = 0; s < n; ++s) {
      fill_complex_gaussian(MatrixXd::Constant(8, 2, std::sqrt(2e-13)), g, fresh);
      MatrixXcd const a = g.completeOrthogonalDecomposition().pseudoInverse();
      load += a.colwise().squaredNorm().transpose();
    }
    load /= n;
    CHECK(test::within(eta, 1.0 / load.maxCoeff(), 0.02));
    // i.i.d. identity: delta = 1 / (M (M - K) alpha) on every antenna.
    CHECK(test::within(eta, 8.0 * 6.0 * 2e-13 / 2.0, 0.02));
  }
  SUBCASE("degenerate moments")
  {
    ZfMoments m;
    m.delta = MatrixXd::Zero(2, 3);
    CHECK_THROWS(zfp_subopt_power(m, 2));
  }
}

TEST_CASE("max-min CBF for a co-located array")
{
  auto cfg = test::unit_noise(test::layout(1, 16, 4));
  SUBCASE("identical users")
  {
    auto const r = cbf_maxmin_cellular(test::uniform_state(1, 4, 0.5, 1.0), cfg);
    CHECK(r.t == doctest::Approx(1.5238095238095237).epsilon(1e-13));
    CHECK(r.power.eta.isApprox(MatrixXd::Constant(1, 4, 0.5), 1e-13));
  }
  SUBCASE("heterogeneous users are equalized")
  {
    cfg = test::layout(1, 64, 4);
    Rng rng(6);
    auto const ls = test::random_state(cfg, rng);
    auto const r = cbf_maxmin_cellular(ls, cfg);
    CHECK(std::abs(r.power.eta.cwiseProduct(ls.alpha).sum() - 1.0) < 1e-12);
    auto const g = cbf_sinr(ls, r.power, cfg).gamma;
    CHECK(g.maxCoeff() - g.minCoeff() < 1e-9 * r.t);
    CHECK(std::abs(g.minCoeff() - r.t) < 1e-9 * r.t);
    CHECK(g.minCoeff() >= cbf_sinr(ls, cbf_full_power(ls), cfg).gamma.minCoeff());
  }
  SUBCASE("errors")
  {
    CHECK_THROWS_AS(cbf_maxmin_cellular(test::uniform_state(2, 4, 0.5, 1.0), cfg), std::invalid_argument);
    LargeScaleState ls = test::uniform_state(1, 4, 0.5, 1.0);
    ls.alpha(0, 2) = 0.0;
    CHECK_THROWS_AS(cbf_maxmin_cellular(ls, cfg), InfeasibleError);
  }
}

TEST_CASE("max-min beats a 200 x 200 grid search for two users")
{
  auto const cfg = test::layout(1, 32, 2);
  LargeScaleState ls{MatrixXd(1, 2), MatrixXd(1, 2)};
  ls.beta << 3e-12, 2e-14;
  ls.alpha = large_scale_from_beta(ls.beta, cfg).alpha;
  auto const r = cbf_maxmin_cellular(ls, cfg);

  // Budget shares s_k = eta_k alpha_k on the grid {0, 1/199, ..., 1}^2 with s_1 + s_2 <= 1.
  double best = 0.0;
  for (int i = 0; i < 200; ++i) {
    for (int j = 0; j < 200; ++j) {
      double const s1 = i / 199.0, s2 = j / 199.0;
      if (s1 + s2 > 1.0 + 1e-15) { continue; }
      DownlinkPowerCBF p{MatrixXd(1, 2)};
      p.eta << s1 / ls.alpha(0, 0), s2 / ls.alpha(0, 1);
      best = std::max(best, cbf_sinr(ls, p, cfg).gamma.minCoeff());
    }
  }
  CHECK(r.t >= best * (1.0 - 1e-12));
  CHECK(best >= r.t * (1.0 - 2.0 / 199.0));
}
