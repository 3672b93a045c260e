#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "proxzone/eval.hpp"
#include "proxzone/fusion.hpp"
#include "proxzone/optics.hpp"
#include "proxzone/zones.hpp"

namespace proxzone::io {

// Environment variable naming a config file when --config is not given.
inline constexpr const char* kConfigEnvVar = "PROXZONE_CONFIG";

// Runtime settings. Every field has a default, so an empty file is valid.
//
// Keys:
//   zone.safe_min_m, zone.unsafe_max_m, optics.assumed_subject_extent_m,
//   fusion.hold_ms, sensor.max_range_m, detector.min_confidence,
//   eval.denominator (detected|actual),
//   color.<safe|warning|unsafe> = Name or Name:r,g,b
struct Config {
  ZoneThresholds zone;
  double assumed_subject_extent_m = kDefaultSubjectExtentM;
  std::int64_t hold_ms = 2000;
  double max_range_m = 4.0;
  double min_confidence = 0.5;
  Denominator denominator = Denominator::Detected;
  ColorScheme colors;

  ZoneClassifier classifier() const { return ZoneClassifier(zone, colors); }
  FusionConfig fusion() const;

  bool operator==(const Config&) const = default;
};

// Throws ValidationError listing every bad key or value.
Config parse_config(std::string_view text, std::string_view source);
Config load_config(const std::filesystem::path& path);
std::string format_config(const Config& config);

}  // namespace proxzone::io
