#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "umimo/montecarlo.hpp"

namespace umimo {

/// Shortest decimal text that parses back to the identical double.
std::string format_double(double v);

struct SummaryRecord
{
  std::string scheme;
  int num_aps = 0;
  int antennas_per_ap = 0;
  int num_users = 0;
  double se_5pct = 0.0;
  double se_median = 0.0;
  double sum_se_mean = 0.0;

  bool operator==(SummaryRecord const &) const = default;
};

SummaryRecord summarize(SEReport const &r);

struct SweepRecord
{
  std::string scheme;
  SweepRow row;
};

std::string cdf_csv(CdfSeries const &c);
std::string summary_csv(std::span<SummaryRecord const> rows);
std::vector<SummaryRecord> parse_summary_csv(std::string const &text);
std::string sweep_csv(std::span<SweepRecord const> rows);

std::string cdf_json(CdfSeries const &c);
std::string summary_json(std::span<SummaryRecord const> rows);
std::string sweep_json(std::span<SweepRecord const> rows);

/// Writes to a sibling temporary file and renames it over `path`, so readers
/// never observe a partially written file.
void write_file_atomic(std::filesystem::path const &path, std::string const &contents);

} // namespace umimo
