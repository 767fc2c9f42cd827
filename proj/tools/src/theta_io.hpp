#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "igasc/mv_model.hpp"
#include "igasc/obs_models.hpp"

namespace igasc::cli {

inline constexpr const char* kMvFamily = "mv-gauss-vol";

/// Flat key=value parameter file. '#' starts a comment.
struct ParamFile {
  std::string family;
  std::map<std::string, double> values;
};

ParamFile read_param_file(const std::string& path);
ParamFile parse_param_text(std::istream& in, const std::string& source);
/// Values are written with 17 significant digits so they read back exactly.
void write_param_file(std::ostream& os, const ParamFile& file);

/// Applies "key=value" overrides.
void apply_overrides(ParamFile& file, const std::vector<std::string>& assignments);

/// Keys: mu, phi, psi, nu (t-vol) or k (weibull-dur), offset.
Theta theta_from_params(Family family, const ParamFile& file);
ParamFile params_from_theta(Family family, const Theta& theta);

/// Keys: dim, offset, mu_i, phi_i, psi_i and rho_i_j (i > j, 1-based).
MvTheta mv_theta_from_params(const ParamFile& file);
ParamFile params_from_mv_theta(const MvTheta& theta);

/// The defaults used by simulate and mc-study when no file is given.
Theta default_theta(Family family);

}  // namespace igasc::cli
