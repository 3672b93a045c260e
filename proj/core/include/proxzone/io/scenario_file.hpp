#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "proxzone/sim.hpp"

namespace proxzone::io {

// JSON scenario with top-level keys camera, subjects, markers, noise, seed.
// camera and subjects are required; the rest default (no markers, zero noise,
// seed 0). Throws ValidationError listing every field path that is missing,
// mistyped or out of range, plus the semantic checks from validate(Scenario).
Scenario parse_scenario(std::string_view json_text, std::string_view source);
Scenario load_scenario(const std::filesystem::path& path);

// Pretty-printed JSON that parse_scenario reads back to an equal scenario.
std::string format_scenario(const Scenario& scenario);

}  // namespace proxzone::io
