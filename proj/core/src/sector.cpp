#include "proxzone/sector.hpp"

namespace proxzone {

std::string_view to_string(Sector s) {
  switch (s) {
    case Sector::Front: return "front";
    case Sector::Left: return "left";
    case Sector::Right: return "right";
    case Sector::Back: return "back";
  }
  return "front";
}

std::optional<Sector> parse_sector(std::string_view name) {
  for (Sector s : kAllSectors) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

}  // namespace proxzone
