#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace igasc::cli {

enum class DataKind { Prices, Returns, Durations };

DataKind parse_kind(const std::string& s);

/// A date-indexed series as read from disk, before any transformation.
struct RawSeries {
  std::string label;
  std::vector<std::string> dates;
  std::vector<double> values;
  std::size_t skipped = 0;  ///< rows with a missing value
};

/// Model-ready observations. For prices, dates[t] is the date of the second
/// price in the pair that produced returns[t].
struct Dataset {
  std::string label;
  DataKind kind = DataKind::Returns;
  std::vector<std::string> dates;
  Eigen::MatrixXd values;  ///< T x N
  std::vector<double> column(int i) const;
};

/// Reads a CSV with a header row, a date column and a value column.
/// Empty, NA and NaN values skip the row; any other unparseable field is
/// an error that carries the line number. Dates must increase strictly.
RawSeries read_series_csv(const std::string& path);

/// 100 * (ln S_t - ln S_{t-1}).
std::vector<double> log_returns(const std::vector<double>& prices);

/// Reads every file, inner-joins on date, then converts according to `kind`.
Dataset ingest(const std::vector<std::string>& paths, DataKind kind);

}  // namespace igasc::cli
