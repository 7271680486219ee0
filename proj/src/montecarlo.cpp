#include "umimo/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace umimo {

namespace {

constexpr std::uint64_t kTopologyStream = 0;
constexpr std::uint64_t kZeroForcingStream = 1;

bool needs_zf_moments(Scheme s)
{
  return s == Scheme::DlZfp || s == Scheme::UlZf || s == Scheme::UlZfPerAntenna;
}

VectorXd evaluate(Scheme scheme, LargeScaleState const &ls, ZfMoments const *zf, SimulationConfig const &cfg)
{
  Index const k = ls.num_users();
  switch (scheme) {
  case Scheme::DlCbf:
    return cbf_sinr(ls, cbf_full_power(ls), cfg).se;
  case Scheme::DlCbfMaxMin:
    return cbf_sinr(ls, cbf_maxmin_cellular(ls, cfg).power, cfg).se;
  case Scheme::DlZfp: {
    DownlinkPowerZFP const p = zfp_subopt_power(*zf, k);
    if (ls.num_aps() == 1) { return zfp_sinr_cellular(p, ls, zf->phi(), cfg).se; }
    return zfp_sinr(p, zf->chi(ls), cfg).se;
  }
  case Scheme::UlMfFullCsi:
    return mf_sinr_full_csi(ls, ul_full_power(k), cfg).se;
  case Scheme::UlMfStats:
    return mf_sinr_stats_only(ls, ul_full_power(k), cfg).se;
  case Scheme::UlZf:
    return zf_sinr(ls, ul_full_power(k), zf->phi(), cfg).se;
  case Scheme::UlZfPerAntenna:
    return zf_sinr_per_antenna(ls, ul_full_power(k), *zf, cfg).se;
  }
  throw std::logic_error("unhandled scheme");
}

/// Runs `body(i)` for i in [0, n) on a small pool; the first exception wins.
template <typename Body> void parallel_for(int n, int threads, Body &&body)
{
  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, std::max(1, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) { body(i); }
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) { failure = std::current_exception(); }
          next = n;
        }
      }
    });
  }
  for (auto &t : pool) { t.join(); }
  if (failure) { std::rethrow_exception(failure); }
}

void finalize(SEReport &r)
{
  double const n = static_cast<double>(r.sum_se_per_draw.size());
  r.sum_se_mean = std::accumulate(r.sum_se_per_draw.begin(), r.sum_se_per_draw.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : r.sum_se_per_draw) { ss += (v - r.sum_se_mean) * (v - r.sum_se_mean); }
  r.sum_se_stderr = n > 1 ? std::sqrt(ss / (n - 1) / n) : 0.0;
  r.percentile_05 = percentile(r.samples, 0.05);
  r.median = percentile(r.samples, 0.5);
}

} // namespace

std::string scheme_name(Scheme s)
{
  switch (s) {
  case Scheme::DlCbf: return "DL-CBF";
  case Scheme::DlCbfMaxMin: return "DL-CBF-maxmin";
  case Scheme::DlZfp: return "DL-ZFP";
  case Scheme::UlMfFullCsi: return "UL-MF-fullCSI";
  case Scheme::UlMfStats: return "UL-MF-stats";
  case Scheme::UlZf: return "UL-ZF";
  case Scheme::UlZfPerAntenna: return "UL-ZF-perantenna";
  }
  throw std::logic_error("unhandled scheme");
}

Scheme parse_scheme(std::string const &name)
{
  for (Scheme s : {Scheme::DlCbf, Scheme::DlCbfMaxMin, Scheme::DlZfp, Scheme::UlMfFullCsi, Scheme::UlMfStats,
                   Scheme::UlZf, Scheme::UlZfPerAntenna}) {
    if (scheme_name(s) == name) { return s; }
  }
  throw std::invalid_argument("unknown scheme: " + name);
}

std::string SchemeSpec::label(int num_antennas) const
{
  return scheme_name(scheme) + "_Nt" + std::to_string(num_antennas / num_aps);
}

CdfSeries cdf(std::span<double const> samples)
{
  if (samples.empty()) { throw std::invalid_argument("cdf: empty sample set"); }
  CdfSeries out;
  out.values.assign(samples.begin(), samples.end());
  std::sort(out.values.begin(), out.values.end());
  double const n = static_cast<double>(out.values.size());
  out.probabilities.resize(out.values.size());
  for (std::size_t i = 0; i < out.values.size(); ++i) { out.probabilities[i] = static_cast<double>(i + 1) / n; }
  return out;
}

double percentile(std::span<double const> samples, double p)
{
  if (samples.empty()) { throw std::invalid_argument("percentile: empty sample set"); }
  if (!(p >= 0.0 && p <= 1.0)) { throw std::invalid_argument("percentile: p must lie in [0, 1]"); }
  std::vector<double> v(samples.begin(), samples.end());
  std::sort(v.begin(), v.end());
  double const h = p * static_cast<double>(v.size() - 1);
  auto const lo = static_cast<std::size_t>(std::floor(h));
  std::size_t const hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

Rng draw_stream(std::uint64_t seed, std::uint64_t draw_index, std::uint64_t purpose)
{
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffU); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32U); };
  std::seed_seq seq{lo(seed), hi(seed), lo(draw_index), hi(draw_index), lo(purpose), hi(purpose)};
  return Rng(seq);
}

void validate_scheme(SimulationConfig const &cfg, SchemeSpec const &spec)
{
  if (spec.num_aps < 1 || cfg.num_antennas % spec.num_aps != 0) {
    throw ConfigError("system.num_aps", "N_AP = " + std::to_string(spec.num_aps) + " must divide M");
  }
  if (spec.scheme == Scheme::DlCbfMaxMin && spec.num_aps != 1) {
    throw ConfigError("scheme", "DL-CBF-maxmin is only defined for a single AP (N_AP = 1)");
  }
  if (cfg.num_users >= cfg.num_antennas) { throw ConfigError("system.num_users", "K must be < M"); }
}

std::vector<SEReport> run_experiments(SimulationConfig const &base, int num_aps, std::span<Scheme const> schemes,
                                      ExecutionOptions const &exec)
{
  base.validate();
  for (Scheme s : schemes) { validate_scheme(base, {s, num_aps}); }
  SimulationConfig const cfg = base.with_layout(num_aps);
  cfg.validate();
  bool const zf = std::any_of(schemes.begin(), schemes.end(), needs_zf_moments);

  int const n_draws = cfg.n_topology_trials;
  std::size_t const n_schemes = schemes.size();
  // per_draw[d][s] holds the K spectral efficiencies of scheme s in draw d.
  std::vector<std::vector<VectorXd>> per_draw(static_cast<std::size_t>(n_draws));

  parallel_for(n_draws, exec.threads, [&](int d) {
    auto const du = static_cast<std::uint64_t>(d);
    Rng topo_rng = draw_stream(cfg.seed, du, kTopologyStream);
    Topology const topo = generate_topology(cfg, topo_rng);
    LargeScaleState const ls = large_scale(topo, cfg, topo_rng);
    std::optional<ZfMoments> moments;
    if (zf) {
      Rng zf_rng = draw_stream(cfg.seed, du, kZeroForcingStream);
      moments = estimate_zf_moments(ls, cfg.antennas_per_ap, cfg.n_channel_samples, zf_rng);
    }
    auto &slot = per_draw[static_cast<std::size_t>(d)];
    slot.reserve(n_schemes);
    for (Scheme s : schemes) { slot.push_back(evaluate(s, ls, moments ? &*moments : nullptr, cfg)); }
  });

  std::vector<SEReport> reports;
  reports.reserve(n_schemes);
  for (std::size_t s = 0; s < n_schemes; ++s) {
    SEReport r;
    r.spec = {schemes[s], num_aps};
    r.scheme_label = r.spec.label(cfg.num_antennas);
    r.antennas_per_ap = cfg.antennas_per_ap;
    r.num_users = cfg.num_users;
    r.n_draws = n_draws;
    r.samples.reserve(static_cast<std::size_t>(n_draws * cfg.num_users));
    for (auto const &draw : per_draw) {
      VectorXd const &se = draw[s];
      r.samples.insert(r.samples.end(), se.data(), se.data() + se.size());
      r.sum_se_per_draw.push_back(se.sum());
    }
    finalize(r);
    reports.push_back(std::move(r));
  }
  return reports;
}

SEReport run_experiment(SimulationConfig const &cfg, SchemeSpec const &spec, ExecutionOptions const &exec)
{
  Scheme const one[] = {spec.scheme};
  return std::move(run_experiments(cfg, spec.num_aps, one, exec).front());
}

std::vector<SweepRow> sweep_users(SimulationConfig const &cfg, std::span<int const> user_counts,
                                  SchemeSpec const &spec, ExecutionOptions const &exec)
{
  if (user_counts.empty()) { throw ConfigError("experiment.user_counts", "must list at least one K"); }
  for (int k : user_counts) {
    if (k < 1 || k >= cfg.num_antennas) {
      throw ConfigError("experiment.user_counts", "K = " + std::to_string(k) + " must satisfy 1 <= K < M");
    }
  }
  std::vector<SweepRow> rows;
  for (int k : user_counts) {
    SEReport const r = run_experiment(cfg.with_users(k), spec, exec);
    rows.push_back({k, r.sum_se_mean, r.sum_se_stderr});
  }
  return rows;
}

} // namespace umimo
