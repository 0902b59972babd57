#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace econophys::cli {

/// Runs the command line (arguments without the program name). Data goes to
/// files, diagnostics to `err`; returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace econophys::cli
