#include "cli.hpp"

#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "umimo/config.hpp"
#include "umimo/montecarlo.hpp"
#include "umimo/report.hpp"

namespace umimo::cli {

namespace {

namespace fs = std::filesystem;

struct CommonFlags
{
  std::string config_path;
  std::string out_dir = "results";
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<int> samples;
  int threads = 0;
  bool json = false;
};

void add_common(CLI::App &cmd, CommonFlags &f)
{
  cmd.add_option("--config", f.config_path, "JSON config file (defaults apply to omitted keys)");
  cmd.add_option("--out", f.out_dir, "Output directory")->capture_default_str();
  cmd.add_option("--seed", f.seed, "RNG seed (overrides config)");
  cmd.add_option("--trials", f.trials, "Topology draws per experiment (overrides config)")->check(CLI::PositiveNumber);
  cmd.add_option("--samples", f.samples, "Channel samples per inner expectation (overrides config)")
    ->check(CLI::PositiveNumber);
  cmd.add_option("--threads", f.threads, "Worker threads, 0 = hardware concurrency")->check(CLI::NonNegativeNumber);
  cmd.add_flag("--json", f.json, "Also write JSON mirrors of every CSV");
}

/// Config file first, then command-line overrides, then validation.
RunConfig resolve(CommonFlags const &f)
{
  RunConfig cfg = f.config_path.empty() ? RunConfig{} : load_config(f.config_path);
  if (f.seed) { cfg.sim.seed = *f.seed; }
  if (f.trials) { cfg.sim.n_topology_trials = *f.trials; }
  if (f.samples) { cfg.sim.n_channel_samples = *f.samples; }
  cfg.sim.validate();
  cfg.plan.validate(cfg.sim);
  return cfg;
}

std::vector<Scheme> downlink_schemes(int num_aps)
{
  if (num_aps == 1) { return {Scheme::DlCbfMaxMin, Scheme::DlZfp}; }
  return {Scheme::DlCbf, Scheme::DlZfp};
}

void emit(fs::path const &dir, std::string const &stem, std::string const &csv, std::string const &json, bool with_json)
{
  write_file_atomic(dir / (stem + ".csv"), csv);
  if (with_json) { write_file_atomic(dir / (stem + ".json"), json); }
}

void print_table(std::ostream &out, std::vector<SummaryRecord> const &rows)
{
  out << std::left << std::setw(24) << "scheme" << std::right << std::setw(10) << "5%-SE" << std::setw(10)
      << "median" << std::setw(12) << "sum-SE" << '\n';
  out << std::fixed << std::setprecision(3);
  for (auto const &r : rows) {
    out << std::left << std::setw(24) << r.scheme << std::right << std::setw(10) << r.se_5pct << std::setw(10)
        << r.se_median << std::setw(12) << r.sum_se_mean << '\n';
  }
  out << std::defaultfloat;
}

void run_cdf_command(RunConfig const &cfg, CommonFlags const &f, bool downlink, std::ostream &out)
{
  fs::create_directories(f.out_dir);
  ExecutionOptions const exec{f.threads};
  std::vector<SummaryRecord> summary;
  for (int nt : cfg.plan.antennas_per_ap) {
    int const n_ap = cfg.sim.num_antennas / nt;
    std::vector<Scheme> const schemes =
      downlink ? downlink_schemes(n_ap)
               : std::vector<Scheme>{Scheme::UlMfFullCsi, Scheme::UlMfStats, Scheme::UlZf};
    for (auto const &rep : run_experiments(cfg.sim, n_ap, schemes, exec)) {
      CdfSeries const c = cdf(rep.samples);
      emit(f.out_dir, "cdf_" + rep.scheme_label, cdf_csv(c), cdf_json(c), f.json);
      summary.push_back(summarize(rep));
    }
  }
  std::string const stem = downlink ? "summary_downlink" : "summary_uplink";
  emit(f.out_dir, stem, summary_csv(summary), summary_json(summary), f.json);
  print_table(out, summary);
}

void run_sweep_command(RunConfig const &cfg, CommonFlags const &f, std::ostream &out)
{
  // Check every K before any simulation starts.
  for (int k : cfg.plan.user_counts) {
    if (k >= cfg.sim.num_antennas) {
      throw ConfigError("experiment.user_counts", "K = " + std::to_string(k) + " must be < M");
    }
  }
  fs::create_directories(f.out_dir);
  ExecutionOptions const exec{f.threads};
  std::vector<SweepRecord> rows;
  for (int nt : cfg.plan.antennas_per_ap) {
    int const n_ap = cfg.sim.num_antennas / nt;
    for (Scheme s : downlink_schemes(n_ap)) {
      SchemeSpec const spec{s, n_ap};
      for (auto const &row : sweep_users(cfg.sim, cfg.plan.user_counts, spec, exec)) {
        rows.push_back({spec.label(cfg.sim.num_antennas), row});
        out << std::left << std::setw(24) << rows.back().scheme << " K=" << std::setw(4) << row.num_users
            << " sum-SE=" << std::fixed << std::setprecision(3) << row.sum_se_mean << " +/- "
            << row.sum_se_stderr << std::defaultfloat << '\n';
      }
    }
  }
  emit(f.out_dir, "sweep", sweep_csv(rows), sweep_json(rows), f.json);
}

} // namespace

int run(std::vector<std::string> const &args, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Cellular / cell-free massive MIMO spectral-efficiency simulator"};
  app.require_subcommand(1);

  CommonFlags dl_flags, ul_flags, sweep_flags;
  auto *dl = app.add_subcommand("downlink", "Per-user SE CDFs for CBF and ZFP precoding");
  auto *ul = app.add_subcommand("uplink", "Per-user SE CDFs for MF and ZF detection");
  auto *sw = app.add_subcommand("sweep", "Mean sum SE versus number of users (downlink schemes)");
  add_common(*dl, dl_flags);
  add_common(*ul, ul_flags);
  add_common(*sw, sweep_flags);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) { rev.pop_back(); } // program name
  try {
    app.parse(rev);
  } catch (CLI::ParseError const &e) {
    return app.exit(e, out, err);
  }

  try {
    if (dl->parsed()) {
      run_cdf_command(resolve(dl_flags), dl_flags, true, out);
    } else if (ul->parsed()) {
      run_cdf_command(resolve(ul_flags), ul_flags, false, out);
    } else {
      run_sweep_command(resolve(sweep_flags), sweep_flags, out);
    }
  } catch (ConfigNotFound const &e) {
    err << "error: " << e.what() << '\n';
    return kConfigNotFound;
  } catch (ConfigError const &e) {
    err << "error: invalid config: " << e.what() << '\n';
    return kConfigInvalid;
  } catch (std::exception const &e) {
    err << "error: " << e.what() << '\n';
    return kRunFailed;
  }
  return kOk;
}

} // namespace umimo::cli
