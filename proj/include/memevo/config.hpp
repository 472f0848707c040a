#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "memevo/harness.hpp"

namespace memevo {

/// Every recognised configuration key, in the order config_to_text writes them.
const std::vector<std::string>& config_keys();

/// Sets one dotted key (run.*, snn.*, mem.*, arena.*). Throws std::invalid_argument for
/// unknown keys or unparsable values.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

/// Current value of a key, formatted as config_to_text would write it.
std::string get_setting(const RunConfig& cfg, std::string_view key);

/// Applies a flat key=value document on top of `base`. Blank lines and lines starting
/// with '#' are ignored. Errors name the offending line.
RunConfig parse_config(std::string_view text, RunConfig base = {});

/// Full configuration as key=value lines; parse_config(config_to_text(c)) reproduces c.
std::string config_to_text(const RunConfig& cfg);

}  // namespace memevo
