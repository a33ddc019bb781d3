#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "gatesim/scenario.hpp"

namespace gatesim {

// Scenario files are flat YAML maps: one key per parameter, sequences for
// vectors, the C_R matrix and the CIP list. Keys not listed in the README
// are rejected. Missing keys keep their default_scenario() value.

Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

/// Emits every resolved parameter. Doubles are written in shortest
/// round-trip form, so parse_scenario(to_config_string(s)) reproduces s.
std::string to_config_string(const Scenario& s);

}  // namespace gatesim
