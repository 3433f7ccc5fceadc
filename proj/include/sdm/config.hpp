#pragma once

// Flat key=value configuration for the experiment runner.
//
// One entry per line; '#' starts a comment; blank lines are ignored.
// List values are comma-separated with no spaces; training tiers are
// count:fraction pairs. Keys mirror ExperimentConfig fields. The same
// grammar serves config files and --set overrides, and the resolved
// echo written next to results parses back to an equivalent config.

#include <stdexcept>
#include <string>
#include <string_view>

#include "sdm/experiments.hpp"

namespace sdm {

/// Config failure tied to a specific key (empty for line-level errors).
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& message);
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// Applies one key=value entry. Unknown keys and unparsable values
/// throw ConfigError naming the key.
void apply_config_entry(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Applies a whole config text, line by line.
void apply_config_text(ExperimentConfig& config, std::string_view text);

/// Every key with its effective value, in a fixed order. Lists print
/// comma-separated; static_locations prints its resolved count.
std::string resolved_config_text(const ExperimentConfig& config);

}  // namespace sdm
