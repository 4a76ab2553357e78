#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace layrel {

/// Runs the command line `args` (program name excluded). Results go to
/// `out`, diagnostics to `err`. Returns 0 on success, 1 on domain errors
/// and 2 on malformed input or usage errors.
int run_cli(const std::vector<std::string> &args, std::ostream &out,
            std::ostream &err);

} // namespace layrel
