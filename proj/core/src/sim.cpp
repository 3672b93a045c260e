#include "proxzone/sim.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <fmt/format.h>

#include "proxzone/errors.hpp"

namespace proxzone {

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

std::vector<std::string> check(const Scenario& scenario) {
  std::vector<std::string> v;
  if (!positive_finite(scenario.camera.focal_length_px)) {
    v.push_back(fmt::format("camera.focal_length_px: must be > 0 (got {})",
                            scenario.camera.focal_length_px));
  }
  if (!positive_finite(scenario.camera.assumed_subject_extent_m)) {
    v.push_back(fmt::format("camera.assumed_subject_extent_m: must be > 0 (got {})",
                            scenario.camera.assumed_subject_extent_m));
  }
  if (scenario.true_focal_length_px && !positive_finite(*scenario.true_focal_length_px)) {
    v.push_back(fmt::format("camera.true_focal_length_px: must be > 0 (got {})",
                            *scenario.true_focal_length_px));
  }
  if (!(std::isfinite(scenario.noise.noise_sigma_px) && scenario.noise.noise_sigma_px >= 0.0)) {
    v.push_back(fmt::format("noise.noise_sigma_px: must be >= 0 (got {})",
                            scenario.noise.noise_sigma_px));
  }
  if (!(std::isfinite(scenario.noise.noise_sigma_m) && scenario.noise.noise_sigma_m >= 0.0)) {
    v.push_back(fmt::format("noise.noise_sigma_m: must be >= 0 (got {})",
                            scenario.noise.noise_sigma_m));
  }

  std::set<std::string> ids;
  for (std::size_t i = 0; i < scenario.subjects.size(); ++i) {
    const SubjectTrack& s = scenario.subjects[i];
    const std::string path = fmt::format("subjects[{}]", i);
    if (s.subject_id.empty()) v.push_back(path + ".subject_id: must not be empty");
    if (!ids.insert(s.subject_id).second) {
      v.push_back(fmt::format("{}.subject_id: duplicate '{}'", path, s.subject_id));
    }
    if (!positive_finite(s.true_height_m)) {
      v.push_back(fmt::format("{}.true_height_m: must be > 0 (got {})", path, s.true_height_m));
    }
    std::set<std::int64_t> front_times;
    for (std::size_t k = 0; k < s.trajectory.size(); ++k) {
      const TrajectoryPoint& p = s.trajectory[k];
      const std::string pp = fmt::format("{}.trajectory[{}]", path, k);
      if (p.timestamp_ms < 0) {
        v.push_back(fmt::format("{}.timestamp_ms: must be >= 0 (got {})", pp, p.timestamp_ms));
      }
      if (k > 0 && p.timestamp_ms < s.trajectory[k - 1].timestamp_ms) {
        v.push_back(fmt::format("{}.timestamp_ms: trajectory not sorted ({} after {})", pp,
                                p.timestamp_ms, s.trajectory[k - 1].timestamp_ms));
      }
      if (!positive_finite(p.true_distance_m)) {
        v.push_back(
            fmt::format("{}.true_distance_m: must be > 0 (got {})", pp, p.true_distance_m));
      }
      if (p.sector == Sector::Front && !front_times.insert(p.timestamp_ms).second) {
        v.push_back(fmt::format("{}.timestamp_ms: second front point at t={} for one subject", pp,
                                p.timestamp_ms));
      }
    }
  }
  for (std::size_t i = 0; i < scenario.markers.size(); ++i) {
    if (!positive_finite(scenario.markers[i].distance_m)) {
      v.push_back(fmt::format("markers[{}].distance_m: must be > 0 (got {})", i,
                              scenario.markers[i].distance_m));
    }
  }
  return v;
}

void validate(const Scenario& scenario) {
  auto violations = check(scenario);
  if (!violations.empty()) throw ValidationError(std::move(violations));
}

double synth_bbox_height(double true_distance_m, double true_height_m, double focal_length_px) {
  require_positive(true_distance_m, "true_distance_m");
  require_positive(true_height_m, "true_height_m");
  require_positive(focal_length_px, "focal_length_px");
  return (true_height_m * focal_length_px) / true_distance_m;
}

SynthesizedHeight synth_bbox_height(double true_distance_m, double true_height_m,
                                    double focal_length_px, double sigma_px, Rng& rng) {
  if (!(std::isfinite(sigma_px) && sigma_px >= 0.0)) {
    throw InvalidArgument(fmt::format("noise_sigma_px must be >= 0 (got {})", sigma_px));
  }
  const double h =
      synth_bbox_height(true_distance_m, true_height_m, focal_length_px) + rng.gaussian(sigma_px);
  if (h < 1.0) return {1.0, true};
  return {h, false};
}

std::vector<ZoneAssessment> SimulationLog::assessments() const {
  std::vector<ZoneAssessment> out;
  for (const auto& e : entries) {
    if (e.assessment) out.push_back(*e.assessment);
  }
  return out;
}

namespace {

// Ground truth riding along with one synthesized event. Frames carry one
// truth per box, in box order.
struct Truth {
  std::string subject_id;
  Sector sector = Sector::Front;
  double distance_m = 0.0;
  bool clamped = false;
};

struct PendingEvent {
  SensorEvent event;
  std::vector<Truth> truths;
};

std::optional<std::string> marker_for(const Scenario& scenario, double distance_m) {
  for (const auto& m : scenario.markers) {
    if (std::abs(m.distance_m - distance_m) <= 1e-9 * std::max(1.0, distance_m)) return m.label;
  }
  return std::nullopt;
}

std::vector<PendingEvent> synthesize(const Scenario& scenario, const FusionConfig& fusion) {
  Rng rng(scenario.seed);
  const double focal = scenario.synthesis_focal_length_px();

  std::vector<PendingEvent> events;
  std::map<std::int64_t, PendingEvent> frames;
  for (std::size_t i = 0; i < scenario.subjects.size(); ++i) {
    const SubjectTrack& s = scenario.subjects[i];
    for (const TrajectoryPoint& p : s.trajectory) {
      const Truth truth{s.subject_id, p.sector, p.true_distance_m, false};
      if (p.sector == Sector::Front) {
        const SynthesizedHeight h = synth_bbox_height(p.true_distance_m, s.true_height_m, focal,
                                                      scenario.noise.noise_sigma_px, rng);
        BoundingBox box;
        box.x = 40.0 + 160.0 * static_cast<double>(i);
        box.y = 0.0;
        box.width_px = 0.4 * h.height_px;
        box.height_px = h.height_px;
        box.confidence = 1.0;
        box.subject_id = s.subject_id;

        PendingEvent& f = frames[p.timestamp_ms];
        if (f.truths.empty()) f.event = DetectionFrame{p.timestamp_ms, {}};
        std::get<DetectionFrame>(f.event).boxes.push_back(std::move(box));
        Truth t = truth;
        t.clamped = h.clamped;
        f.truths.push_back(std::move(t));
        continue;
      }

      events.push_back({MotionEvent{p.timestamp_ms, p.sector}, {truth}});
      double reading = p.true_distance_m + rng.gaussian(scenario.noise.noise_sigma_m);
      Truth t = truth;
      if (reading < kMinSynthRangeM) {
        reading = kMinSynthRangeM;
        t.clamped = true;
      }
      RangeReading r{p.timestamp_ms, p.sector, std::nullopt};
      if (reading <= fusion.max_range_m) r.distance_m = reading;
      events.push_back({r, {std::move(t)}});
    }
  }
  for (auto& [t, f] : frames) events.push_back(std::move(f));

  std::stable_sort(events.begin(), events.end(), [](const PendingEvent& a, const PendingEvent& b) {
    return replays_before(a.event, b.event);
  });
  return events;
}

}  // namespace

SimulationLog run_scenario(const Scenario& scenario, const SimulationOptions& options) {
  validate(scenario);
  FusionEngine engine(options.fusion);
  const std::vector<PendingEvent> events = synthesize(scenario, options.fusion);

  SimulationLog log;
  for (const PendingEvent& pending : events) {
    const StepResult step = apply(engine, pending.event, scenario.camera);
    const std::int64_t t = timestamp_of(pending.event);

    if (const auto* frame = std::get_if<DetectionFrame>(&pending.event)) {
      for (std::size_t k = 0; k < frame->boxes.size(); ++k) {
        const Truth& truth = pending.truths[k];
        SimulationEntry e{t,     truth.subject_id, truth.sector, truth.distance_m,
                          marker_for(scenario, truth.distance_m), pending.event, truth.clamped,
                          std::nullopt};
        for (const auto& a : step.assessments) {
          if (a.subject_id == frame->boxes[k].subject_id) e.assessment = a;
        }
        log.entries.push_back(std::move(e));
      }
    } else {
      const Truth& truth = pending.truths.front();
      SimulationEntry e{t,     truth.subject_id, truth.sector, truth.distance_m,
                        marker_for(scenario, truth.distance_m), pending.event, truth.clamped,
                        std::nullopt};
      if (!step.assessments.empty()) e.assessment = step.assessments.front();
      log.entries.push_back(std::move(e));
    }
    log.events.push_back(pending.event);
    if (options.record_overlays) log.overlays.push_back(engine.overlay());
  }
  log.dropped_readings = engine.dropped_readings();
  return log;
}

std::vector<Measurement> measurements_from(const SimulationLog& log) {
  std::vector<Measurement> out;
  for (const auto& e : log.entries) {
    if (!e.assessment || !e.assessment->distance_m) continue;
    std::string label = e.marker_label.value_or(
        fmt::format("{}@{}ms/{}", e.subject_id, e.timestamp_ms, to_string(e.sector)));
    out.push_back({std::move(label), *e.assessment->distance_m, e.ground_truth_distance_m});
  }
  return out;
}

PercentErrorReport compare_to_markers(std::span<const Measurement> pairs,
                                      Denominator denominator) {
  return summarize(pairs, denominator);
}

PercentErrorReport compare_to_markers(const Scenario& scenario, const SimulationOptions& options,
                                      Denominator denominator) {
  const SimulationLog log = run_scenario(scenario, options);
  const std::vector<Measurement> pairs = measurements_from(log);
  return compare_to_markers(pairs, denominator);
}

}  // namespace proxzone
