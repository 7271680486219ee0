#include "umimo/report.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace umimo {

namespace {

std::vector<std::string> split(std::string const &line, char sep)
{
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) { out.push_back(cur); }
  if (!line.empty() && line.back() == sep) { out.emplace_back(); }
  return out;
}

double parse_double(std::string const &s)
{
  double v = 0.0;
  auto const [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) { throw std::runtime_error("bad number in CSV: " + s); }
  return v;
}

int parse_int(std::string const &s)
{
  int v = 0;
  auto const [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) { throw std::runtime_error("bad integer in CSV: " + s); }
  return v;
}

constexpr char const *kSummaryHeader = "scheme,n_ap,n_t,k,se_5pct,se_median,sum_se_mean";

} // namespace

std::string format_double(double v)
{
  char buf[64];
  auto const [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) { throw std::runtime_error("format_double failed"); }
  return {buf, ptr};
}

SummaryRecord summarize(SEReport const &r)
{
  return {r.scheme_label, r.spec.num_aps, r.antennas_per_ap, r.num_users, r.percentile_05, r.median,
          r.sum_se_mean};
}

std::string cdf_csv(CdfSeries const &c)
{
  std::string out = "se_bps_hz,cum_prob\n";
  for (std::size_t i = 0; i < c.values.size(); ++i) {
    out += format_double(c.values[i]);
    out += ',';
    out += format_double(c.probabilities[i]);
    out += '\n';
  }
  return out;
}

std::string summary_csv(std::span<SummaryRecord const> rows)
{
  std::string out = std::string(kSummaryHeader) + "\n";
  for (auto const &r : rows) {
    out += r.scheme + ',' + std::to_string(r.num_aps) + ',' + std::to_string(r.antennas_per_ap) + ',' +
           std::to_string(r.num_users) + ',' + format_double(r.se_5pct) + ',' + format_double(r.se_median) + ',' +
           format_double(r.sum_se_mean) + '\n';
  }
  return out;
}

std::vector<SummaryRecord> parse_summary_csv(std::string const &text)
{
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kSummaryHeader) {
    throw std::runtime_error("summary CSV: unexpected header");
  }
  std::vector<SummaryRecord> rows;
  while (std::getline(in, line)) {
    if (line.empty()) { continue; }
    auto const f = split(line, ',');
    if (f.size() != 7) { throw std::runtime_error("summary CSV: expected 7 fields: " + line); }
    rows.push_back({f[0], parse_int(f[1]), parse_int(f[2]), parse_int(f[3]), parse_double(f[4]),
                    parse_double(f[5]), parse_double(f[6])});
  }
  return rows;
}

std::string sweep_csv(std::span<SweepRecord const> rows)
{
  std::string out = "scheme,K,sum_se_mean,sum_se_stderr\n";
  for (auto const &r : rows) {
    out += r.scheme + ',' + std::to_string(r.row.num_users) + ',' + format_double(r.row.sum_se_mean) + ',' +
           format_double(r.row.sum_se_stderr) + '\n';
  }
  return out;
}

std::string cdf_json(CdfSeries const &c)
{
  return nlohmann::json{{"se_bps_hz", c.values}, {"cum_prob", c.probabilities}}.dump();
}

std::string summary_json(std::span<SummaryRecord const> rows)
{
  auto arr = nlohmann::json::array();
  for (auto const &r : rows) {
    arr.push_back({{"scheme", r.scheme},
                   {"n_ap", r.num_aps},
                   {"n_t", r.antennas_per_ap},
                   {"k", r.num_users},
                   {"se_5pct", r.se_5pct},
                   {"se_median", r.se_median},
                   {"sum_se_mean", r.sum_se_mean}});
  }
  return arr.dump(2);
}

std::string sweep_json(std::span<SweepRecord const> rows)
{
  auto arr = nlohmann::json::array();
  for (auto const &r : rows) {
    arr.push_back({{"scheme", r.scheme},
                   {"K", r.row.num_users},
                   {"sum_se_mean", r.row.sum_se_mean},
                   {"sum_se_stderr", r.row.sum_se_stderr}});
  }
  return arr.dump(2);
}

void write_file_atomic(std::filesystem::path const &path, std::string const &contents)
{
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) { throw std::runtime_error("cannot open for writing: " + tmp.string()); }
    out << contents;
    out.flush();
    if (!out) { throw std::runtime_error("write failed: " + tmp.string()); }
  }
  std::filesystem::rename(tmp, path);
}

} // namespace umimo
