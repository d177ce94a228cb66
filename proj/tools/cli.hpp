#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace thurston::cli {

/// Runs one command line (without the program name). Human-readable text
/// goes to `out`, diagnostics to `err`. Returns 0 on success, 1 for a
/// negative answer, 2 for bad input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace thurston::cli
