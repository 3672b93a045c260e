#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace proxzone {

// Direction around the wearer. Front is camera-ranged, the rest are
// ultrasonic-ranged. Enum order is the tie-break order for replay.
enum class Sector { Front = 0, Left = 1, Right = 2, Back = 3 };

inline constexpr std::array<Sector, 4> kAllSectors = {Sector::Front, Sector::Left, Sector::Right,
                                                      Sector::Back};

inline constexpr bool is_ultrasonic(Sector s) { return s != Sector::Front; }

// Lowercase wire name ("front", "left", ...).
std::string_view to_string(Sector s);
std::optional<Sector> parse_sector(std::string_view name);

}  // namespace proxzone
