#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "proxzone/optics.hpp"
#include "proxzone/sector.hpp"
#include "proxzone/zones.hpp"

namespace proxzone {

// Passive-infrared trigger on an ultrasonic-ranged sector.
struct MotionEvent {
  std::int64_t timestamp_ms = 0;
  Sector sector = Sector::Left;

  bool operator==(const MotionEvent&) const = default;
};

// Ultrasonic measurement. An empty distance means the echo came back beyond
// the sensor ceiling (out of range).
struct RangeReading {
  std::int64_t timestamp_ms = 0;
  Sector sector = Sector::Left;
  std::optional<double> distance_m;

  bool operator==(const RangeReading&) const = default;
};

// Command for the sensor layer: fire the ultrasonic ranger on a sector.
struct ActivateUltrasonic {
  Sector sector = Sector::Left;

  bool operator==(const ActivateUltrasonic&) const = default;
};

struct FusionConfig {
  std::int64_t hold_ms = 2000;
  double max_range_m = 4.0;
  double min_confidence = 0.5;
  ZoneClassifier classifier;

  bool operator==(const FusionConfig&) const = default;
};

void validate(const FusionConfig& config);

struct HeldAssessment {
  ZoneAssessment assessment;
  std::int64_t expires_at_ms = 0;

  bool operator==(const HeldAssessment&) const = default;
};

struct FusionState {
  std::array<std::optional<std::int64_t>, 4> armed_at;    // indexed by Sector
  std::array<std::optional<HeldAssessment>, 4> held;      // ultrasonic sectors
  std::map<std::string, HeldAssessment> front_subjects;   // keyed by subject_id
  std::optional<std::int64_t> last_seen_ms;
  std::uint64_t dropped_readings = 0;

  bool operator==(const FusionState&) const = default;
};

// Motion-gated ultrasonic ranging plus front-camera ranging, with per
// assessment expiry. Events must be applied in non-decreasing timestamp order;
// a violation throws OrderingError and leaves the state untouched.
class FusionEngine {
 public:
  explicit FusionEngine(FusionConfig config = {});

  // Arms the sector (idempotent, refreshes the arm time).
  ActivateUltrasonic on_motion(const MotionEvent& event);

  // Consumes the armed state. Readings on unarmed sectors are dropped and
  // counted. Finite readings beyond max_range_m are treated as out of range.
  std::optional<ZoneAssessment> on_range(const RangeReading& reading);

  // One assessment per box whose confidence >= min_confidence.
  std::vector<ZoneAssessment> on_detection_frame(const DetectionFrame& frame,
                                                 const CalibrationProfile& profile);

  // Drops assessments whose expiry is <= now_ms and returns each sector that
  // reverted to idle as a result.
  std::vector<Sector> tick(std::int64_t now_ms);

  bool is_armed(Sector s) const { return state_.armed_at[static_cast<int>(s)].has_value(); }

  // Current headline for a sector; empty when idle.
  std::optional<ZoneAssessment> sector_assessment(Sector s) const;
  std::vector<ZoneAssessment> front_subjects() const;
  ZoneTag front_headline() const;

  OverlayFrame overlay() const;

  const FusionState& state() const { return state_; }
  const FusionConfig& config() const { return config_; }
  std::uint64_t dropped_readings() const { return state_.dropped_readings; }

 private:
  void advance_clock(std::int64_t t_ms);

  FusionConfig config_;
  FusionState state_;
};

// An input event for replay.
using SensorEvent = std::variant<MotionEvent, RangeReading, DetectionFrame>;

std::int64_t timestamp_of(const SensorEvent& e);

// Replay order: timestamp, then motion < range < detection frame, then sector.
bool replays_before(const SensorEvent& a, const SensorEvent& b);

// Stable sort by replays_before.
void sort_events(std::vector<SensorEvent>& events);

// Result of pushing one event through the engine.
struct StepResult {
  std::vector<Sector> expired;
  std::optional<ActivateUltrasonic> command;
  std::vector<ZoneAssessment> assessments;
};

// Applies tick(t) then the event itself.
StepResult apply(FusionEngine& engine, const SensorEvent& event,
                 const CalibrationProfile& profile);

// Sorts into replay order, applies every event and returns all assessments in
// emission order.
std::vector<ZoneAssessment> replay(std::vector<SensorEvent> events, FusionEngine& engine,
                                   const CalibrationProfile& profile);

}  // namespace proxzone
