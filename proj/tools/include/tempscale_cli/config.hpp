#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tempscale/pipeline.hpp"

namespace tempscale::cli {

/// Invalid configuration; `field()` is the dotted key at fault.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error("config field '" + field + "': " + message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

struct OutputPaths {
    // Empty means "not written"; "-" means standard output.
    std::string extrema = "-";
    std::string response;
    std::string quadrature;
    std::string profile;
};

struct CliConfig {
    PipelineConfig pipeline;
    OutputPaths output;
};

/// Every recognised key, in document order.
const std::vector<std::string>& config_keys();

/// Flat object keyed by dotted names; contains every key.
nlohmann::json to_json(const CliConfig& config);
/// Keys missing from `doc` keep their value in `base`. Unknown keys and wrong types throw ConfigError.
CliConfig from_json(const nlohmann::json& doc, const CliConfig& base = {});

/// Parses a textual value for `key` according to its type, e.g. from a command-line override.
nlohmann::json parse_value(const std::string& key, const std::string& text);
/// Applies "key=value".
void apply_override(CliConfig& config, const std::string& assignment);

CliConfig load_config(const std::string& path, const CliConfig& base = {});
std::string dump_config(const CliConfig& config);

/// Range checks with field paths, followed by the library's own validation.
void check(const CliConfig& config);

}  // namespace tempscale::cli
