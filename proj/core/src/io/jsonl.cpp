#include "proxzone/io/jsonl.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "proxzone/errors.hpp"

namespace proxzone::io {

namespace {

using ojson = nlohmann::ordered_json;
using nlohmann::json;

// Integral values print as JSON integers so pixel boxes keep the int schema
// whenever they can.
ojson number(double v) {
  if (std::isfinite(v) && std::floor(v) == v && std::abs(v) < 9.0e15) {
    return static_cast<std::int64_t>(v);
  }
  return v;
}

std::string dump(const ojson& j) { return j.dump(-1, ' ', false, json::error_handler_t::strict); }

class LineReader {
 public:
  LineReader(std::istream& in, std::string_view source) : in_(in), source_(source) {}

  // Next non-blank line parsed as a JSON object.
  bool next(json& out) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      try {
        out = json::parse(line);
      } catch (const json::parse_error& e) {
        fail("", fmt::format("invalid JSON ({})", e.what()));
      }
      if (!out.is_object()) fail("", "expected a JSON object");
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(std::string_view field, std::string_view what) const {
    if (field.empty()) throw ValidationError({fmt::format("{}:{}: {}", source_, line_no_, what)});
    throw ValidationError({fmt::format("{}:{}: {}: {}", source_, line_no_, field, what)});
  }

  const json& require(const json& obj, const char* key, std::string_view path) const {
    const auto it = obj.find(key);
    if (it == obj.end()) fail(path, "missing");
    return *it;
  }

  std::int64_t timestamp(const json& obj) const {
    const json& t = require(obj, "t_ms", "t_ms");
    if (!t.is_number_integer() || t.get<std::int64_t>() < 0) {
      fail("t_ms", "expected a non-negative integer");
    }
    return t.get<std::int64_t>();
  }

  double real(const json& obj, const char* key, std::string_view path) const {
    const json& v = require(obj, key, path);
    if (!v.is_number()) fail(path, "expected a number");
    return v.get<double>();
  }

  std::string text(const json& obj, const char* key) const {
    const json& v = require(obj, key, key);
    if (!v.is_string()) fail(key, "expected a string");
    return v.get<std::string>();
  }

  Sector sector(const json& obj, bool allow_front) const {
    const std::string name = text(obj, "sector");
    const auto s = parse_sector(name);
    if (!s) fail("sector", fmt::format("unknown sector '{}'", name));
    if (!allow_front && *s == Sector::Front) {
      fail("sector", "front is camera-ranged; expected left, right or back");
    }
    return *s;
  }

 private:
  std::istream& in_;
  std::string source_;
  int line_no_ = 0;
};

}  // namespace

std::string detection_line(std::int64_t t_ms, const BoundingBox& box) {
  ojson j;
  j["t_ms"] = t_ms;
  j["subject_id"] = box.subject_id;
  j["bbox"] = ojson{{"x", number(box.x)},
                    {"y", number(box.y)},
                    {"w", number(box.width_px)},
                    {"h", number(box.height_px)}};
  j["confidence"] = box.confidence;
  return dump(j);
}

std::string motion_line(const MotionEvent& e) {
  ojson j;
  j["t_ms"] = e.timestamp_ms;
  j["sector"] = std::string(to_string(e.sector));
  return dump(j);
}

std::string range_line(const RangeReading& r) {
  ojson j;
  j["t_ms"] = r.timestamp_ms;
  j["sector"] = std::string(to_string(r.sector));
  j["distance_m"] = r.distance_m ? ojson(*r.distance_m) : ojson(nullptr);
  return dump(j);
}

std::string event_line(const ZoneAssessment& a) {
  ojson j;
  j["t_ms"] = a.timestamp_ms;
  j["sector"] = std::string(to_string(a.sector));
  if (a.subject_id) j["subject_id"] = *a.subject_id;
  if (a.distance_m) j["distance_m"] = *a.distance_m;
  j["tag"] = std::string(wire_name(a.tag));
  j["color"] = a.color.name;
  if (a.out_of_range()) j["out_of_range"] = true;
  return dump(j);
}

std::vector<DetectionFrame> read_detections(std::istream& in, std::string_view source) {
  LineReader r(in, source);
  std::vector<DetectionFrame> frames;
  json j;
  while (r.next(j)) {
    const std::int64_t t = r.timestamp(j);
    BoundingBox box;
    box.subject_id = r.text(j, "subject_id");
    const json& bb = r.require(j, "bbox", "bbox");
    if (!bb.is_object()) r.fail("bbox", "expected an object");
    box.x = r.real(bb, "x", "bbox.x");
    box.y = r.real(bb, "y", "bbox.y");
    box.width_px = r.real(bb, "w", "bbox.w");
    box.height_px = r.real(bb, "h", "bbox.h");
    if (!(box.width_px > 0.0) || !(box.height_px > 0.0)) r.fail("bbox", "w and h must be > 0");
    box.confidence = r.real(j, "confidence", "confidence");
    if (!(box.confidence >= 0.0 && box.confidence <= 1.0)) {
      r.fail("confidence", "expected a value in [0,1]");
    }

    if (frames.empty() || frames.back().timestamp_ms != t) frames.push_back({t, {}});
    for (const auto& existing : frames.back().boxes) {
      if (existing.subject_id == box.subject_id) {
        r.fail("subject_id", fmt::format("duplicate '{}' at t_ms={}", box.subject_id, t));
      }
    }
    frames.back().boxes.push_back(std::move(box));
  }
  return frames;
}

std::vector<MotionEvent> read_motions(std::istream& in, std::string_view source) {
  LineReader r(in, source);
  std::vector<MotionEvent> out;
  json j;
  while (r.next(j)) out.push_back({r.timestamp(j), r.sector(j, false)});
  return out;
}

std::vector<RangeReading> read_ranges(std::istream& in, std::string_view source) {
  LineReader r(in, source);
  std::vector<RangeReading> out;
  json j;
  while (r.next(j)) {
    RangeReading reading{r.timestamp(j), r.sector(j, false), std::nullopt};
    const json& d = r.require(j, "distance_m", "distance_m");
    if (!d.is_null()) {
      if (!d.is_number() || !(d.get<double>() > 0.0)) {
        r.fail("distance_m", "expected a positive number or null");
      }
      reading.distance_m = d.get<double>();
    }
    out.push_back(reading);
  }
  return out;
}

std::vector<ZoneAssessment> read_events(std::istream& in, std::string_view source,
                                        const ColorScheme& colors) {
  LineReader r(in, source);
  std::vector<ZoneAssessment> out;
  json j;
  while (r.next(j)) {
    ZoneAssessment a;
    a.timestamp_ms = r.timestamp(j);
    a.sector = r.sector(j, true);
    if (j.contains("subject_id")) a.subject_id = r.text(j, "subject_id");
    if (j.contains("distance_m") && !j["distance_m"].is_null()) {
      a.distance_m = r.real(j, "distance_m", "distance_m");
    }
    const std::string tag = r.text(j, "tag");
    const auto parsed = parse_tag(tag);
    if (!parsed) r.fail("tag", fmt::format("unknown tag '{}'", tag));
    a.tag = *parsed;
    a.color.name = r.text(j, "color");
    for (ZoneTag t : {ZoneTag::Safe, ZoneTag::Warning, ZoneTag::Unsafe}) {
      if (colors.color_for(t).name == a.color.name) a.color.rgb = colors.color_for(t).rgb;
    }
    bool oor = false;
    if (j.contains("out_of_range")) {
      if (!j["out_of_range"].is_boolean()) r.fail("out_of_range", "expected a boolean");
      oor = j["out_of_range"].get<bool>();
    }
    if (oor == a.distance_m.has_value()) {
      r.fail("out_of_range", "must be true exactly when distance_m is absent");
    }
    out.push_back(std::move(a));
  }
  return out;
}

void write_events(std::ostream& out, const std::vector<ZoneAssessment>& assessments) {
  for (const auto& a : assessments) out << event_line(a) << '\n';
}

InputStreams format_inputs(const std::vector<SensorEvent>& events) {
  InputStreams s;
  for (const auto& e : events) {
    if (const auto* m = std::get_if<MotionEvent>(&e)) {
      s.motions += motion_line(*m) + "\n";
    } else if (const auto* r = std::get_if<RangeReading>(&e)) {
      s.ranges += range_line(*r) + "\n";
    } else {
      const auto& f = std::get<DetectionFrame>(e);
      for (const auto& box : f.boxes) s.detections += detection_line(f.timestamp_ms, box) + "\n";
    }
  }
  return s;
}

std::string ground_truth_line(const SimulationEntry& e) {
  ojson j;
  j["t_ms"] = e.timestamp_ms;
  j["subject_id"] = e.subject_id;
  j["sector"] = std::string(to_string(e.sector));
  const char* kind = std::holds_alternative<MotionEvent>(e.event)   ? "motion"
                     : std::holds_alternative<RangeReading>(e.event) ? "range"
                                                                     : "detection";
  j["event"] = kind;
  j["true_distance_m"] = e.ground_truth_distance_m;
  if (e.marker_label) j["marker"] = *e.marker_label;
  if (const auto* r = std::get_if<RangeReading>(&e.event)) {
    j["reading_m"] = r->distance_m ? ojson(*r->distance_m) : ojson(nullptr);
  }
  if (const auto* f = std::get_if<DetectionFrame>(&e.event)) {
    for (const auto& box : f->boxes) {
      if (box.subject_id == e.subject_id) j["bbox_h_px"] = box.height_px;
    }
  }
  if (e.clamped) j["clamped"] = true;
  j["assessed"] = e.assessment.has_value();
  if (e.assessment) {
    if (e.assessment->distance_m) j["distance_m"] = *e.assessment->distance_m;
    j["tag"] = std::string(wire_name(e.assessment->tag));
  }
  return dump(j);
}

std::string overlay_line(const OverlayFrame& frame) {
  ojson j;
  j["t_ms"] = frame.timestamp_ms;
  j["sectors"] = ojson::array();
  for (const auto& s : frame.sectors) {
    ojson e;
    e["sector"] = std::string(to_string(s.sector));
    e["tag"] = std::string(wire_name(s.tag));
    e["color"] = s.color.name;
    e["distance_m"] = s.distance_m ? ojson(*s.distance_m) : ojson(nullptr);
    if (s.out_of_range) e["out_of_range"] = true;
    j["sectors"].push_back(std::move(e));
  }
  j["subjects"] = ojson::array();
  for (const auto& s : frame.subjects) {
    ojson e;
    e["subject_id"] = s.subject_id;
    if (s.bbox) {
      e["bbox"] = ojson{{"x", number(s.bbox->x)},
                        {"y", number(s.bbox->y)},
                        {"w", number(s.bbox->width_px)},
                        {"h", number(s.bbox->height_px)}};
    }
    e["distance_m"] = s.distance_m;
    e["tag"] = std::string(wire_name(s.tag));
    e["color"] = s.color.name;
    j["subjects"].push_back(std::move(e));
  }
  return dump(j);
}

}  // namespace proxzone::io
