#pragma once

#include <iosfwd>

namespace igasc::cli {

/// Entry point of the command-line tool. Tabular output goes to `out`
/// unless --out names a directory; diagnostics and logs go to `err`.
/// Returns 0 on success, 2 for usage errors, 3 for invalid data or
/// parameters, 4 for a failed study and 1 otherwise.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace igasc::cli
