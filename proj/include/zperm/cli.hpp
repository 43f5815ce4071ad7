#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zperm::cli {

// Runs one subcommand and returns the process exit code:
//   0 success, 1 usage error, 2 invalid input file, 3 refused as infeasible.
// Machine output goes to `out` (or the --out path), diagnostics to `err`.
// `args` excludes the program name. ZPERM_SEED supplies the default seed.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// argv flavor for main(); writes to stdout/stderr.
int dispatch(int argc, const char* const* argv);

}  // namespace zperm::cli
