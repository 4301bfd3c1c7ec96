#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tempscale_cli/config.hpp"

namespace tempscale::cli {

const std::vector<std::string>& demo_names();

/// Starting configuration of a demo; user settings are layered on top.
CliConfig demo_defaults(const std::string& name);

/// Writes the demo's records to the configured outputs and a summary to `log`. Returns 0 on success.
int run_demo(const std::string& name, const CliConfig& config, std::ostream& out, std::ostream& log);

}  // namespace tempscale::cli
