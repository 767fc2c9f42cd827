#include "ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <spdlog/spdlog.h>

#include "igasc/errors.hpp"

namespace igasc::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\"");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\"");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, sep)) out.push_back(trim(field));
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

bool is_missing(const std::string& s) {
  std::string l = s;
  std::transform(l.begin(), l.end(), l.begin(), [](unsigned char c) { return std::tolower(c); });
  return l.empty() || l == "na" || l == "nan" || l == "null" || l == ".";
}

bool parse_double(const std::string& s, double& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

}  // namespace

DataKind parse_kind(const std::string& s) {
  if (s == "prices") return DataKind::Prices;
  if (s == "returns") return DataKind::Returns;
  if (s == "durations") return DataKind::Durations;
  throw UsageError("unknown data kind '" + s + "' (expected prices, returns or durations)");
}

std::vector<double> Dataset::column(int i) const {
  std::vector<double> c(static_cast<std::size_t>(values.rows()));
  for (Eigen::Index t = 0; t < values.rows(); ++t) c[static_cast<std::size_t>(t)] = values(t, i);
  return c;
}

RawSeries read_series_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open data file '" + path + "'");
  RawSeries s;
  s.label = path;
  std::string line;
  std::size_t lineno = 0;
  char sep = ',';
  bool header = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    if (header) {
      if (line.find(',') == std::string::npos && line.find(';') != std::string::npos) sep = ';';
      header = false;
      continue;
    }
    const auto fields = split(line, sep);
    if (fields.size() < 2) {
      throw DomainError(path + ":" + std::to_string(lineno) + ": expected a date and a value");
    }
    if (is_missing(fields[1])) {
      ++s.skipped;
      continue;
    }
    double v = 0.0;
    if (!parse_double(fields[1], v)) {
      throw DomainError(path + ":" + std::to_string(lineno) + ": cannot parse value '" + fields[1] + "'");
    }
    if (fields[0].empty()) throw DomainError(path + ":" + std::to_string(lineno) + ": empty date");
    if (!s.dates.empty() && !(s.dates.back() < fields[0])) {
      throw DomainError(path + ":" + std::to_string(lineno) + ": dates must be strictly increasing");
    }
    s.dates.push_back(fields[0]);
    s.values.push_back(v);
  }
  if (s.skipped > 0) spdlog::info("{}: skipped {} rows with missing values", path, s.skipped);
  return s;
}

std::vector<double> log_returns(const std::vector<double>& prices) {
  if (prices.size() < 2) throw UsageError("need at least two prices to form returns");
  std::vector<double> r(prices.size() - 1);
  for (std::size_t t = 1; t < prices.size(); ++t) {
    if (!(prices[t] > 0.0) || !(prices[t - 1] > 0.0)) throw DomainError("prices must be strictly positive");
    r[t - 1] = 100.0 * (std::log(prices[t]) - std::log(prices[t - 1]));
  }
  return r;
}

Dataset ingest(const std::vector<std::string>& paths, DataKind kind) {
  if (paths.empty()) throw UsageError("no data files given");
  std::vector<RawSeries> raw;
  for (const auto& p : paths) raw.push_back(read_series_csv(p));

  // Inner join on dates.
  std::vector<std::string> common = raw.front().dates;
  for (std::size_t i = 1; i < raw.size(); ++i) {
    std::vector<std::string> next;
    std::set_intersection(common.begin(), common.end(), raw[i].dates.begin(), raw[i].dates.end(),
                          std::back_inserter(next));
    common = std::move(next);
  }
  if (raw.size() > 1) spdlog::info("joined {} series on {} common dates", raw.size(), common.size());

  const auto n = static_cast<Eigen::Index>(raw.size());
  Eigen::MatrixXd joined(static_cast<Eigen::Index>(common.size()), n);
  for (Eigen::Index j = 0; j < n; ++j) {
    std::map<std::string, double> lookup;
    for (std::size_t t = 0; t < raw[j].dates.size(); ++t) lookup.emplace(raw[j].dates[t], raw[j].values[t]);
    for (std::size_t t = 0; t < common.size(); ++t) joined(static_cast<Eigen::Index>(t), j) = lookup.at(common[t]);
  }

  Dataset d;
  d.kind = kind;
  d.label = paths.size() == 1 ? paths.front() : std::to_string(paths.size()) + " series";
  if (kind == DataKind::Prices) {
    if (common.size() < 2) throw UsageError("need at least two prices to form returns");
    d.values.resize(joined.rows() - 1, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      std::vector<double> col(joined.col(j).data(), joined.col(j).data() + joined.rows());
      const auto r = log_returns(col);
      for (std::size_t t = 0; t < r.size(); ++t) d.values(static_cast<Eigen::Index>(t), j) = r[t];
    }
    d.dates.assign(common.begin() + 1, common.end());
    return d;
  }
  if (common.empty()) throw UsageError("no observations after joining data files");
  if (kind == DataKind::Durations) {
    for (Eigen::Index t = 0; t < joined.rows(); ++t) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (!(joined(t, j) > 0.0)) {
          throw DomainError("durations must be strictly positive (date " + common[static_cast<std::size_t>(t)] + ")");
        }
      }
    }
  }
  d.values = std::move(joined);
  d.dates = std::move(common);
  return d;
}

}  // namespace igasc::cli
