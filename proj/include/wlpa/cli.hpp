#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wlpa {

// Runs one CLI invocation. Returns the process exit code: 0 on success, 1 on
// a precondition failure, 2 on a parse/usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wlpa
