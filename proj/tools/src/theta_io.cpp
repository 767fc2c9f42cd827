#include "theta_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>

#include "igasc/errors.hpp"
#include "igasc/estimation.hpp"

namespace igasc::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_value(const std::string& text, const std::string& where) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw UsageError(where + ": cannot parse number '" + text + "'");
  return v;
}

void assign(ParamFile& file, const std::string& line, const std::string& where) {
  const auto eq = line.find('=');
  if (eq == std::string::npos) throw UsageError(where + ": expected key=value");
  const std::string key = trim(line.substr(0, eq));
  const std::string value = trim(line.substr(eq + 1));
  if (key.empty()) throw UsageError(where + ": empty key");
  if (key == "family") {
    file.family = value;
  } else {
    file.values[key] = parse_value(value, where);
  }
}

double require(const ParamFile& file, const std::string& key) {
  const auto it = file.values.find(key);
  if (it == file.values.end()) throw UsageError("parameter '" + key + "' is missing");
  return it->second;
}

double get_or(const ParamFile& file, const std::string& key, double fallback) {
  const auto it = file.values.find(key);
  return it == file.values.end() ? fallback : it->second;
}

std::string shape_key(Family family) { return family == Family::TVol ? "nu" : "k"; }

}  // namespace

ParamFile parse_param_text(std::istream& in, const std::string& source) {
  ParamFile file;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    assign(file, line, source + ":" + std::to_string(lineno));
  }
  return file;
}

ParamFile read_param_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open parameter file '" + path + "'");
  return parse_param_text(in, path);
}

void write_param_file(std::ostream& os, const ParamFile& file) {
  const auto old = os.precision(17);
  if (!file.family.empty()) os << "family=" << file.family << '\n';
  for (const auto& [k, v] : file.values) os << k << '=' << v << '\n';
  os.precision(old);
}

void apply_overrides(ParamFile& file, const std::vector<std::string>& assignments) {
  for (const auto& a : assignments) assign(file, a, "--set " + a);
}

Theta theta_from_params(Family family, const ParamFile& file) {
  Theta t;
  t.mu = require(file, "mu");
  t.phi = require(file, "phi");
  t.psi = require(file, "psi");
  t.offset = get_or(file, "offset", kDefaultOffset);
  if (has_shape(family)) t.shape = require(file, shape_key(family));
  validate_obs_params(family, t.obs());
  if (!t.ar().stationary()) throw StationarityError("state process is not stationary (|phi| must be < 1)");
  return t;
}

ParamFile params_from_theta(Family family, const Theta& theta) {
  ParamFile f;
  f.family = std::string(family_name(family));
  f.values = {{"mu", theta.mu}, {"phi", theta.phi}, {"psi", theta.psi}, {"offset", theta.offset}};
  if (has_shape(family)) f.values[shape_key(family)] = theta.shape;
  return f;
}

MvTheta mv_theta_from_params(const ParamFile& file) {
  const double dim_value = require(file, "dim");
  const int dim = static_cast<int>(dim_value);
  if (dim < 2 || dim != dim_value) throw UsageError("dim must be an integer >= 2");
  MvTheta theta;
  theta.offset = get_or(file, "offset", kDefaultOffset);
  Eigen::MatrixXd corr = Eigen::MatrixXd::Identity(dim, dim);
  for (int i = 1; i <= dim; ++i) {
    const std::string s = std::to_string(i);
    theta.series.push_back({require(file, "mu_" + s), require(file, "phi_" + s), require(file, "psi_" + s)});
    for (int j = 1; j < i; ++j) {
      const double rho = get_or(file, "rho_" + s + "_" + std::to_string(j), 0.0);
      corr(i - 1, j - 1) = rho;
      corr(j - 1, i - 1) = rho;
    }
  }
  theta.corr = CorrMatrix(corr);
  validate(theta);
  return theta;
}

ParamFile params_from_mv_theta(const MvTheta& theta) {
  ParamFile f;
  f.family = kMvFamily;
  const int dim = theta.dim();
  f.values["dim"] = dim;
  f.values["offset"] = theta.offset;
  for (int i = 1; i <= dim; ++i) {
    const std::string s = std::to_string(i);
    f.values["mu_" + s] = theta.series[i - 1].mu;
    f.values["phi_" + s] = theta.series[i - 1].phi;
    f.values["psi_" + s] = theta.series[i - 1].psi;
    for (int j = 1; j < i; ++j) f.values["rho_" + s + "_" + std::to_string(j)] = theta.corr(i - 1, j - 1);
  }
  return f;
}

Theta default_theta(Family family) {
  Theta t{0.3, 0.2, 0.7, 0.0, kDefaultOffset};
  if (family == Family::TVol) t.shape = 10.0;
  if (family == Family::WeibullDur) t.shape = 2.0;
  return t;
}

}  // namespace igasc::cli
