// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string_view>

#include "insector/evaluation.hpp"

namespace insector {

// Flat `key = value` text, one entry per line, `#` starts a comment.
// Unknown keys, malformed values and duplicates raise ConfigError.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

} // namespace insector
