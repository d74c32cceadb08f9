#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "pairest/error.hpp"

namespace pairest {

/// 2 input/parse, 3 design, 4 degenerate estimator, 5 internal.
int exit_code(ErrorCode code) noexcept;

/// Runs the command line `args` (program name excluded) and returns the exit
/// status. Results go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pairest
