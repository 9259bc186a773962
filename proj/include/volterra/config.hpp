#pragma once

// Experiment configuration: a small TOML subset (sections, scalar
// key/value pairs, flat arrays) parsed into JSON, with defaults and
// override merging.  Every CLI run embeds the fully resolved config in
// its output so results can be reproduced from the file alone.

#include <stdexcept>
#include <string>

#include <json.hpp>

namespace volterra {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Supported syntax: `[section]` / `[a.b]` headers, `key = value` with
// string, bool, integer, float, or flat-array values, `#` comments.
nlohmann::json parse_toml(const std::string& text);

nlohmann::json load_config_file(const std::string& path);

// All defaults for every subcommand, as JSON.
nlohmann::json default_config();

// Recursive merge: values in `over` replace those in `base`.
nlohmann::json merge_config(nlohmann::json base, const nlohmann::json& over);

// The defaults rendered back as TOML text (for --print-defaults).
std::string default_config_toml();

}  // namespace volterra
