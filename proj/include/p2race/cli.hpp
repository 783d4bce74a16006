#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace p2race {

// Runs the command-line tool on argv-style arguments (program name excluded).
// Results go to `out`, diagnostics and error reasons to `err`.  Returns the
// process exit code: 0 on success, 1 on runtime failure (resources, cache,
// undefined quantities), 2 on usage errors (bad flags, invalid d, malformed
// integers, insufficient explicit sieve limit).
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace p2race
