#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tempscale::cli {

/// Entry point shared by the executable and the tests. `args` excludes the program name.
/// Exit codes: 0 success, 1 failed table checks, 2 invalid config, input or usage.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace tempscale::cli
