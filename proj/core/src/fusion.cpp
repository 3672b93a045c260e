#include "proxzone/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include <fmt/format.h>

#include "proxzone/errors.hpp"

namespace proxzone {

namespace {

int index_of(Sector s) { return static_cast<int>(s); }

void require_ultrasonic(Sector s, const char* what) {
  if (!is_ultrasonic(s)) {
    throw InvalidArgument(fmt::format("{} on sector '{}': front is camera-ranged", what,
                                      to_string(s)));
  }
}

}  // namespace

void validate(const FusionConfig& config) {
  if (config.hold_ms < 0) {
    throw InvalidArgument(fmt::format("fusion.hold_ms must be >= 0 (got {})", config.hold_ms));
  }
  require_positive(config.max_range_m, "sensor.max_range_m");
  if (!(config.min_confidence >= 0.0 && config.min_confidence <= 1.0)) {
    throw InvalidArgument(
        fmt::format("detector.min_confidence must lie in [0,1] (got {})", config.min_confidence));
  }
  validate(config.classifier.thresholds());
}

FusionEngine::FusionEngine(FusionConfig config) : config_(std::move(config)) {
  validate(config_);
}

void FusionEngine::advance_clock(std::int64_t t_ms) {
  if (state_.last_seen_ms && t_ms < *state_.last_seen_ms) {
    throw OrderingError(
        fmt::format("event at t={} ms arrived after t={} ms", t_ms, *state_.last_seen_ms));
  }
  state_.last_seen_ms = t_ms;
}

ActivateUltrasonic FusionEngine::on_motion(const MotionEvent& event) {
  require_ultrasonic(event.sector, "motion event");
  advance_clock(event.timestamp_ms);
  state_.armed_at[index_of(event.sector)] = event.timestamp_ms;
  return ActivateUltrasonic{event.sector};
}

std::optional<ZoneAssessment> FusionEngine::on_range(const RangeReading& reading) {
  require_ultrasonic(reading.sector, "range reading");
  if (reading.distance_m) require_positive(*reading.distance_m, "distance_m");
  advance_clock(reading.timestamp_ms);

  auto& armed = state_.armed_at[index_of(reading.sector)];
  if (!armed) {
    ++state_.dropped_readings;
    return std::nullopt;
  }
  armed.reset();

  ZoneAssessment a;
  a.timestamp_ms = reading.timestamp_ms;
  a.sector = reading.sector;
  if (reading.distance_m && *reading.distance_m <= config_.max_range_m) {
    const Classification c = config_.classifier.classify(*reading.distance_m);
    a.distance_m = reading.distance_m;
    a.tag = c.tag;
    a.color = c.color;
  } else {
    a.tag = ZoneTag::Safe;
    a.color = config_.classifier.colors().color_for(ZoneTag::Safe);
  }
  state_.held[index_of(reading.sector)] =
      HeldAssessment{a, reading.timestamp_ms + config_.hold_ms};
  return a;
}

std::vector<ZoneAssessment> FusionEngine::on_detection_frame(const DetectionFrame& frame,
                                                             const CalibrationProfile& profile) {
  validate(frame);
  validate(profile);
  advance_clock(frame.timestamp_ms);

  std::vector<ZoneAssessment> out;
  for (const auto& box : frame.boxes) {
    if (box.confidence < config_.min_confidence) continue;
    const double d = estimate_distance(profile, box.height_px);
    const Classification c = config_.classifier.classify(d);
    ZoneAssessment a;
    a.timestamp_ms = frame.timestamp_ms;
    a.sector = Sector::Front;
    a.subject_id = box.subject_id;
    a.distance_m = d;
    a.tag = c.tag;
    a.color = c.color;
    a.bbox = box;
    state_.front_subjects[box.subject_id] =
        HeldAssessment{a, frame.timestamp_ms + config_.hold_ms};
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<Sector> FusionEngine::tick(std::int64_t now_ms) {
  advance_clock(now_ms);
  std::vector<Sector> expired;

  if (!state_.front_subjects.empty()) {
    std::erase_if(state_.front_subjects,
                  [&](const auto& kv) { return kv.second.expires_at_ms <= now_ms; });
    if (state_.front_subjects.empty()) expired.push_back(Sector::Front);
  }
  for (Sector s : kAllSectors) {
    auto& held = state_.held[index_of(s)];
    if (held && held->expires_at_ms <= now_ms) {
      held.reset();
      expired.push_back(s);
    }
  }
  return expired;
}

std::vector<ZoneAssessment> FusionEngine::front_subjects() const {
  std::vector<ZoneAssessment> out;
  const std::int64_t now = state_.last_seen_ms.value_or(0);
  for (const auto& [id, held] : state_.front_subjects) {
    if (held.expires_at_ms > now) out.push_back(held.assessment);
  }
  return out;
}

ZoneTag FusionEngine::front_headline() const {
  const auto subjects = front_subjects();
  return most_severe(subjects);
}

std::optional<ZoneAssessment> FusionEngine::sector_assessment(Sector s) const {
  const std::int64_t now = state_.last_seen_ms.value_or(0);
  if (s == Sector::Front) {
    const auto subjects = front_subjects();
    if (const ZoneAssessment* a = most_urgent(subjects)) return *a;
    return std::nullopt;
  }
  const auto& held = state_.held[index_of(s)];
  if (held && held->expires_at_ms > now) return held->assessment;
  return std::nullopt;
}

OverlayFrame FusionEngine::overlay() const {
  std::vector<ZoneAssessment> sides;
  for (Sector s : kAllSectors) {
    if (!is_ultrasonic(s)) continue;
    if (auto a = sector_assessment(s)) sides.push_back(std::move(*a));
  }
  return render_overlay(state_.last_seen_ms.value_or(0), sides, front_subjects(),
                        config_.classifier.colors());
}

std::int64_t timestamp_of(const SensorEvent& e) {
  return std::visit([](const auto& v) { return v.timestamp_ms; }, e);
}

namespace {

int sector_key(const SensorEvent& e) {
  if (const auto* m = std::get_if<MotionEvent>(&e)) return index_of(m->sector);
  if (const auto* r = std::get_if<RangeReading>(&e)) return index_of(r->sector);
  return index_of(Sector::Front);
}

}  // namespace

bool replays_before(const SensorEvent& a, const SensorEvent& b) {
  return std::tuple{timestamp_of(a), a.index(), sector_key(a)} <
         std::tuple{timestamp_of(b), b.index(), sector_key(b)};
}

void sort_events(std::vector<SensorEvent>& events) {
  std::stable_sort(events.begin(), events.end(), replays_before);
}

StepResult apply(FusionEngine& engine, const SensorEvent& event,
                 const CalibrationProfile& profile) {
  StepResult result;
  result.expired = engine.tick(timestamp_of(event));
  if (const auto* m = std::get_if<MotionEvent>(&event)) {
    result.command = engine.on_motion(*m);
  } else if (const auto* r = std::get_if<RangeReading>(&event)) {
    if (auto a = engine.on_range(*r)) result.assessments.push_back(std::move(*a));
  } else {
    result.assessments = engine.on_detection_frame(std::get<DetectionFrame>(event), profile);
  }
  return result;
}

std::vector<ZoneAssessment> replay(std::vector<SensorEvent> events, FusionEngine& engine,
                                   const CalibrationProfile& profile) {
  sort_events(events);
  std::vector<ZoneAssessment> out;
  for (const auto& e : events) {
    StepResult step = apply(engine, e, profile);
    for (auto& a : step.assessments) out.push_back(std::move(a));
  }
  return out;
}

}  // namespace proxzone
