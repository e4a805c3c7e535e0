#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dapprox {

/// Runs one CLI invocation. `args` excludes the program name. Returns 0 on
/// success, 2 on a precondition or usage error, 1 on an internal error.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dapprox
