// Copyright 2026 The HQLR Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hqlr/sim_config.hpp"

namespace hqlr::harness {

/// Parses the flat `key = value` format. Blank lines and text after '#' are
/// ignored. Unknown keys, malformed lines and bad values raise ConfigError
/// naming the field. The result is validated.
SimConfig parse_config(std::string_view text);

/// Reads and parses a config file; a missing file is a ConfigError on "path".
SimConfig load_config(const std::string& path);

/// Writes every field in the parseable format, in a fixed order.
std::string format_config(const SimConfig& cfg);

/// Sets one field from its textual value without validating the whole config.
void set_field(SimConfig& cfg, std::string_view key, std::string_view value);

/// Config fields that `sweep` accepts, plus the pseudo-parameter "eps_q".
const std::vector<std::string>& sweepable_fields();
bool is_sweepable(std::string_view name);

}  // namespace hqlr::harness
