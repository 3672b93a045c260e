#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "proxzone/eval.hpp"
#include "proxzone/fusion.hpp"
#include "proxzone/optics.hpp"
#include "proxzone/rng.hpp"

namespace proxzone {

struct TrajectoryPoint {
  std::int64_t timestamp_ms = 0;
  Sector sector = Sector::Front;
  double true_distance_m = 0.0;

  bool operator==(const TrajectoryPoint&) const = default;
};

struct SubjectTrack {
  std::string subject_id;
  double true_height_m = kDefaultSubjectExtentM;
  std::vector<TrajectoryPoint> trajectory;

  bool operator==(const SubjectTrack&) const = default;
};

// A labeled ground-truth distance, e.g. a tape mark on the floor.
struct Marker {
  std::string label;
  double distance_m = 0.0;

  bool operator==(const Marker&) const = default;
};

struct NoiseModel {
  double noise_sigma_px = 0.0;
  double noise_sigma_m = 0.0;

  bool operator==(const NoiseModel&) const = default;
};

struct Scenario {
  // What the ranging pipeline believes about the camera.
  CalibrationProfile camera;
  // Focal length used to synthesize boxes. Defaults to camera.focal_length_px.
  std::optional<double> true_focal_length_px;
  std::vector<SubjectTrack> subjects;
  std::vector<Marker> markers;
  NoiseModel noise;
  std::uint64_t seed = 0;

  bool operator==(const Scenario&) const = default;

  double synthesis_focal_length_px() const {
    return true_focal_length_px.value_or(camera.focal_length_px);
  }
};

// Every violation as "field.path: message". Empty when the scenario is valid.
std::vector<std::string> check(const Scenario& scenario);
// Throws ValidationError listing check()'s violations.
void validate(const Scenario& scenario);

// Pixel height a subject of true_height_m spans at true_distance_m.
double synth_bbox_height(double true_distance_m, double true_height_m, double focal_length_px);

struct SynthesizedHeight {
  double height_px = 0.0;
  bool clamped = false;  // noise pushed the box below 1 px
};

// Noisy variant: adds Normal(0, sigma_px) and clamps the result to >= 1 px.
SynthesizedHeight synth_bbox_height(double true_distance_m, double true_height_m,
                                    double focal_length_px, double sigma_px, Rng& rng);

// Smallest reading a noisy ultrasonic synthesis may produce.
inline constexpr double kMinSynthRangeM = 0.02;

struct SimulationEntry {
  std::int64_t timestamp_ms = 0;
  std::string subject_id;
  Sector sector = Sector::Front;
  double ground_truth_distance_m = 0.0;
  std::optional<std::string> marker_label;
  SensorEvent event;
  bool clamped = false;
  std::optional<ZoneAssessment> assessment;
};

struct SimulationLog {
  std::vector<SimulationEntry> entries;
  std::vector<SensorEvent> events;     // every synthesized event, in replay order
  std::vector<OverlayFrame> overlays;  // one per applied event when recorded
  std::uint64_t dropped_readings = 0;

  // Only the entries that produced an assessment, in order.
  std::vector<ZoneAssessment> assessments() const;
};

struct SimulationOptions {
  FusionConfig fusion;
  bool record_overlays = false;
};

// Synthesizes sensor events for every trajectory point, merges them in replay
// order and runs them through a fresh FusionEngine. Pure in (scenario, options).
SimulationLog run_scenario(const Scenario& scenario, const SimulationOptions& options = {});

// Detected/actual pairs for every assessed entry that carries a finite distance.
// Labels are the matching marker label when there is one.
std::vector<Measurement> measurements_from(const SimulationLog& log);

// Detected-vs-actual comparison table over marker observations.
PercentErrorReport compare_to_markers(std::span<const Measurement> pairs,
                                      Denominator denominator = Denominator::Detected);
PercentErrorReport compare_to_markers(const Scenario& scenario,
                                      const SimulationOptions& options = {},
                                      Denominator denominator = Denominator::Detected);

}  // namespace proxzone
