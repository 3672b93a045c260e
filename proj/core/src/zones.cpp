#include "proxzone/zones.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <fmt/format.h>

#include "proxzone/errors.hpp"

namespace proxzone {

std::string_view display_name(ZoneTag t) {
  switch (t) {
    case ZoneTag::Safe: return "Safe";
    case ZoneTag::Warning: return "Warning";
    case ZoneTag::Unsafe: return "Unsafe";
  }
  return "Safe";
}

std::string_view wire_name(ZoneTag t) {
  switch (t) {
    case ZoneTag::Safe: return "safe";
    case ZoneTag::Warning: return "warning";
    case ZoneTag::Unsafe: return "unsafe";
  }
  return "safe";
}

std::optional<ZoneTag> parse_tag(std::string_view name) {
  for (ZoneTag t : {ZoneTag::Safe, ZoneTag::Warning, ZoneTag::Unsafe}) {
    if (wire_name(t) == name || display_name(t) == name) return t;
  }
  return std::nullopt;
}

ColorScheme::ColorScheme()
    : colors_{Color{"Green", {0, 128, 0}}, Color{"Orange", {255, 165, 0}},
              Color{"Red", {255, 0, 0}}} {}

void validate(const ZoneThresholds& thresholds) {
  require_positive(thresholds.unsafe_max_m, "zone.unsafe_max_m");
  require_positive(thresholds.safe_min_m, "zone.safe_min_m");
  if (!(thresholds.unsafe_max_m < thresholds.safe_min_m)) {
    throw InvalidArgument(fmt::format("zone.unsafe_max_m ({}) must be < zone.safe_min_m ({})",
                                      thresholds.unsafe_max_m, thresholds.safe_min_m));
  }
}

ZoneTag classify_tag(double distance_m, const ZoneThresholds& thresholds) {
  require_positive(distance_m, "distance_m");
  if (distance_m <= thresholds.unsafe_max_m) return ZoneTag::Unsafe;
  if (distance_m < thresholds.safe_min_m) return ZoneTag::Warning;
  return ZoneTag::Safe;
}

ZoneClassifier::ZoneClassifier(ZoneThresholds thresholds, ColorScheme colors)
    : thresholds_(thresholds), colors_(std::move(colors)) {
  validate(thresholds_);
}

Classification ZoneClassifier::classify(double distance_m) const {
  const ZoneTag tag = classify_tag(distance_m, thresholds_);
  return {tag, colors_.color_for(tag)};
}

Classification classify(double distance_m) {
  static const ZoneClassifier kDefault;
  return kDefault.classify(distance_m);
}

ZoneTag most_severe(std::span<const ZoneAssessment> assessments) {
  ZoneTag worst = ZoneTag::Safe;
  for (const auto& a : assessments) {
    if (severity(a.tag) > severity(worst)) worst = a.tag;
  }
  return worst;
}

namespace {

SectorEntry entry_from(const ZoneAssessment& a) {
  return {a.sector, a.tag, a.color, a.distance_m, a.out_of_range()};
}

// Orders by severity descending, then nearest first, then id.
bool more_urgent(const ZoneAssessment& a, const ZoneAssessment& b) {
  if (severity(a.tag) != severity(b.tag)) return severity(a.tag) > severity(b.tag);
  const double da = a.distance_m.value_or(INFINITY);
  const double db = b.distance_m.value_or(INFINITY);
  if (da != db) return da < db;
  return a.subject_id.value_or("") < b.subject_id.value_or("");
}

}  // namespace

const ZoneAssessment* most_urgent(std::span<const ZoneAssessment> assessments) {
  const ZoneAssessment* best = nullptr;
  for (const auto& a : assessments) {
    if (best == nullptr || more_urgent(a, *best)) best = &a;
  }
  return best;
}

OverlayFrame render_overlay(std::int64_t timestamp_ms,
                            std::span<const ZoneAssessment> sector_assessments,
                            std::span<const ZoneAssessment> front_subject_assessments,
                            const ColorScheme& colors) {
  OverlayFrame frame;
  frame.timestamp_ms = timestamp_ms;
  for (Sector s : kAllSectors) {
    frame.sectors[static_cast<int>(s)] =
        SectorEntry{s, ZoneTag::Safe, colors.color_for(ZoneTag::Safe), std::nullopt, false};
  }

  std::array<bool, 4> seen{};
  for (const auto& a : sector_assessments) {
    const int idx = static_cast<int>(a.sector);
    if (seen[idx]) {
      throw InvalidArgument(
          fmt::format("duplicate assessment for sector '{}'", to_string(a.sector)));
    }
    seen[idx] = true;
    frame.sectors[idx] = entry_from(a);
  }

  std::set<std::string> ids;
  for (const auto& a : front_subject_assessments) {
    const std::string id = a.subject_id.value_or("");
    if (!ids.insert(id).second) {
      throw InvalidArgument(fmt::format("duplicate front subject '{}'", id));
    }
    if (!a.distance_m) {
      throw InvalidArgument(fmt::format("front subject '{}' has no distance", id));
    }
    frame.subjects.push_back(SubjectEntry{id, a.bbox, *a.distance_m, a.tag, a.color});
  }
  const ZoneAssessment* headline = most_urgent(front_subject_assessments);
  std::sort(frame.subjects.begin(), frame.subjects.end(),
            [](const SubjectEntry& a, const SubjectEntry& b) { return a.subject_id < b.subject_id; });

  if (!seen[static_cast<int>(Sector::Front)] && headline != nullptr) {
    SectorEntry front = entry_from(*headline);
    front.sector = Sector::Front;
    frame.sectors[static_cast<int>(Sector::Front)] = front;
  }
  return frame;
}

namespace {

std::string hex(const Rgb& c) { return fmt::format("#{:02x}{:02x}{:02x}", c.r, c.g, c.b); }

std::string label_for(const SectorEntry& e) {
  if (e.out_of_range) return fmt::format("{} (out of range)", display_name(e.tag));
  if (e.distance_m) return fmt::format("{} {:.2f} m", display_name(e.tag), *e.distance_m);
  return std::string(display_name(e.tag));
}

}  // namespace

std::string render_overlay_svg(const OverlayFrame& frame) {
  constexpr double kCenter = 200.0;
  constexpr double kInner = 30.0;
  constexpr double kOuter = 180.0;
  constexpr double kPxPerMeter = (kOuter - kInner) / 4.5;

  // Quadrant wedge per sector; angles in degrees, 0 = up, clockwise.
  const auto wedge = [&](double from_deg, double to_deg) {
    const auto pt = [&](double r, double deg) {
      const double rad = deg * std::numbers::pi / 180.0;
      return fmt::format("{:.1f},{:.1f}", kCenter + r * std::sin(rad), kCenter - r * std::cos(rad));
    };
    return fmt::format("{} {} {} {}", pt(kInner, from_deg), pt(kOuter, from_deg),
                       pt(kOuter, to_deg), pt(kInner, to_deg));
  };
  const std::array<std::pair<double, double>, 4> spans = {
      std::pair{-45.0, 45.0}, {225.0, 315.0}, {45.0, 135.0}, {135.0, 225.0}};
  const std::array<std::pair<double, double>, 4> label_pos = {
      std::pair{200.0, 45.0}, {60.0, 205.0}, {340.0, 205.0}, {200.0, 370.0}};

  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" "
      "viewBox=\"0 0 400 400\">\n"
      "  <title>zones t={} ms</title>\n"
      "  <rect width=\"400\" height=\"400\" fill=\"#ffffff\"/>\n",
      frame.timestamp_ms);
  for (Sector s : kAllSectors) {
    const int i = static_cast<int>(s);
    const SectorEntry& e = frame.sectors[i];
    svg += fmt::format(
        "  <polygon points=\"{}\" fill=\"{}\" fill-opacity=\"0.35\" stroke=\"{}\" "
        "data-sector=\"{}\"/>\n",
        wedge(spans[i].first, spans[i].second), hex(e.color.rgb), hex(e.color.rgb), to_string(s));
    svg += fmt::format(
        "  <text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\" font-size=\"12\">{}: {}</text>\n",
        label_pos[i].first, label_pos[i].second, to_string(s), label_for(e));
  }
  svg += fmt::format("  <circle cx=\"{0}\" cy=\"{0}\" r=\"{1}\" fill=\"#333333\"/>\n", kCenter,
                     kInner * 0.6);

  const double n = static_cast<double>(frame.subjects.size());
  for (std::size_t k = 0; k < frame.subjects.size(); ++k) {
    const SubjectEntry& s = frame.subjects[k];
    const double r = kInner + std::min(s.distance_m, 4.5) * kPxPerMeter;
    const double deg = n > 1 ? -30.0 + 60.0 * static_cast<double>(k) / (n - 1.0) : 0.0;
    const double rad = deg * std::numbers::pi / 180.0;
    const double cx = kCenter + r * std::sin(rad);
    const double cy = kCenter - r * std::cos(rad);
    svg += fmt::format(
        "  <circle cx=\"{:.1f}\" cy=\"{:.1f}\" r=\"6\" fill=\"{}\" data-subject=\"{}\"/>\n", cx,
        cy, hex(s.color.rgb), s.subject_id);
    svg += fmt::format(
        "  <text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"10\">{} {:.2f} m</text>\n", cx + 8.0,
        cy + 3.0, s.subject_id, s.distance_m);
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace proxzone
