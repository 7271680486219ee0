#pragma once

#include <span>
#include <string>
#include <vector>

#include "umimo/config.hpp"
#include "umimo/power.hpp"

namespace umimo {

enum class Scheme {
  DlCbf,          // conjugate beamforming, per-AP full power
  DlCbfMaxMin,    // conjugate beamforming, max-min power (single AP only)
  DlZfp,          // zero-forcing precoding, common sub-optimal coefficient
  UlMfFullCsi,    // matched filter, estimates known
  UlMfStats,      // matched filter, statistics only
  UlZf,           // zero-forcing detection, published closed form
  UlZfPerAntenna, // zero-forcing detection, per-antenna error weighting
};

std::string scheme_name(Scheme s);
Scheme parse_scheme(std::string const &name);

struct SchemeSpec
{
  Scheme scheme = Scheme::DlZfp;
  int num_aps = 256;

  /// e.g. "DL-ZFP_Nt8" for 256 antennas over 32 APs.
  std::string label(int num_antennas) const;
};

/// Pooled per-user spectral efficiencies of one scheme over all topology draws.
struct SEReport
{
  std::string scheme_label;
  SchemeSpec spec;
  int antennas_per_ap = 1;
  int num_users = 0;
  int n_draws = 0;
  std::vector<double> samples;         // K * n_draws, draw-major, bits/s/Hz
  std::vector<double> sum_se_per_draw; // n_draws
  double sum_se_mean = 0.0;
  double sum_se_stderr = 0.0;
  double percentile_05 = 0.0;
  double median = 0.0;
};

struct CdfSeries
{
  std::vector<double> values;        // sorted ascending
  std::vector<double> probabilities; // i / n, i = 1..n
};

CdfSeries cdf(std::span<double const> samples);

/// Linear interpolation between order statistics at rank p * (n - 1).
double percentile(std::span<double const> samples, double p);

struct ExecutionOptions
{
  /// Worker threads for topology draws; 0 picks std::thread::hardware_concurrency().
  int threads = 0;
};

/// Independent engine for (seed, draw, purpose); results never depend on
/// which thread evaluates a draw.
Rng draw_stream(std::uint64_t seed, std::uint64_t draw_index, std::uint64_t purpose);

/// Throws ConfigError for scheme/layout combinations that cannot run.
void validate_scheme(SimulationConfig const &cfg, SchemeSpec const &spec);

SEReport run_experiment(SimulationConfig const &cfg, SchemeSpec const &spec, ExecutionOptions const &exec = {});

/// Several schemes on one layout, sharing each draw's topology and
/// zero-forcing moments. Each report equals what run_experiment returns alone.
std::vector<SEReport> run_experiments(SimulationConfig const &cfg, int num_aps, std::span<Scheme const> schemes,
                                      ExecutionOptions const &exec = {});

struct SweepRow
{
  int num_users = 0;
  double sum_se_mean = 0.0;
  double sum_se_stderr = 0.0;
};

std::vector<SweepRow> sweep_users(SimulationConfig const &cfg, std::span<int const> user_counts,
                                  SchemeSpec const &spec, ExecutionOptions const &exec = {});

} // namespace umimo
