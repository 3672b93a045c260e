#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "proxzone/optics.hpp"
#include "proxzone/sector.hpp"

namespace proxzone {

// Severity increases with the enumerator value.
enum class ZoneTag { Safe = 0, Warning = 1, Unsafe = 2 };

inline constexpr int severity(ZoneTag t) { return static_cast<int>(t); }

// "Safe" / "Warning" / "Unsafe".
std::string_view display_name(ZoneTag t);
// "safe" / "warning" / "unsafe" (JSONL form).
std::string_view wire_name(ZoneTag t);
std::optional<ZoneTag> parse_tag(std::string_view name);

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  bool operator==(const Rgb&) const = default;
};

struct Color {
  std::string name;
  Rgb rgb;

  bool operator==(const Color&) const = default;
};

class ColorScheme {
 public:
  // Green / Orange / Red.
  ColorScheme();

  const Color& color_for(ZoneTag t) const { return colors_[severity(t)]; }
  void set(ZoneTag t, Color c) { colors_[severity(t)] = std::move(c); }

  bool operator==(const ColorScheme&) const = default;

 private:
  std::array<Color, 3> colors_;
};

// Unsafe = (0, unsafe_max_m], Warning = (unsafe_max_m, safe_min_m),
// Safe = [safe_min_m, inf).
struct ZoneThresholds {
  double unsafe_max_m = 0.5;
  double safe_min_m = 1.0;

  bool operator==(const ZoneThresholds&) const = default;
};

void validate(const ZoneThresholds& thresholds);

struct Classification {
  ZoneTag tag = ZoneTag::Safe;
  Color color;

  bool operator==(const Classification&) const = default;
};

// Throws InvalidArgument for a non-positive or non-finite distance.
ZoneTag classify_tag(double distance_m, const ZoneThresholds& thresholds = {});

class ZoneClassifier {
 public:
  ZoneClassifier() = default;
  ZoneClassifier(ZoneThresholds thresholds, ColorScheme colors);

  Classification classify(double distance_m) const;
  const ZoneThresholds& thresholds() const { return thresholds_; }
  const ColorScheme& colors() const { return colors_; }

  bool operator==(const ZoneClassifier&) const = default;

 private:
  ZoneThresholds thresholds_;
  ColorScheme colors_;
};

// Default thresholds and colors.
Classification classify(double distance_m);

// One classified verdict. distance_m is empty for an out-of-range ultrasonic
// reading, which always carries the Safe tag.
struct ZoneAssessment {
  std::int64_t timestamp_ms = 0;
  Sector sector = Sector::Front;
  std::optional<std::string> subject_id;
  std::optional<double> distance_m;
  ZoneTag tag = ZoneTag::Safe;
  Color color;
  std::optional<BoundingBox> bbox;

  bool out_of_range() const { return !distance_m.has_value(); }
  bool operator==(const ZoneAssessment&) const = default;
};

// Safe for an empty list.
ZoneTag most_severe(std::span<const ZoneAssessment> assessments);

// The assessment that should headline a sector: highest severity, then
// nearest, then lowest subject id. Null for an empty list.
const ZoneAssessment* most_urgent(std::span<const ZoneAssessment> assessments);

struct SectorEntry {
  Sector sector = Sector::Front;
  ZoneTag tag = ZoneTag::Safe;
  Color color;
  std::optional<double> distance_m;
  bool out_of_range = false;

  bool operator==(const SectorEntry&) const = default;
};

struct SubjectEntry {
  std::string subject_id;
  std::optional<BoundingBox> bbox;
  double distance_m = 0.0;
  ZoneTag tag = ZoneTag::Safe;
  Color color;

  bool operator==(const SubjectEntry&) const = default;
};

// Declarative snapshot of the wearer's display.
struct OverlayFrame {
  std::int64_t timestamp_ms = 0;
  std::array<SectorEntry, 4> sectors;  // indexed by Sector
  std::vector<SubjectEntry> subjects;  // sorted by subject_id

  bool operator==(const OverlayFrame&) const = default;
};

// Builds one entry per sector and one per front subject. Idle sectors show the
// Safe color with no distance. When no explicit Front assessment is given the
// front entry mirrors the most severe (then nearest) front subject.
// Throws InvalidArgument on a duplicate sector or duplicate subject id.
OverlayFrame render_overlay(std::int64_t timestamp_ms,
                            std::span<const ZoneAssessment> sector_assessments,
                            std::span<const ZoneAssessment> front_subject_assessments,
                            const ColorScheme& colors = {});

// Static top-down diagram of an overlay frame.
std::string render_overlay_svg(const OverlayFrame& frame);

}  // namespace proxzone
