#include "proxzone/sim.hpp"

#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "proxzone/errors.hpp"
#include "proxzone/io/scenario_file.hpp"
#include "proxzone/io/text.hpp"

namespace proxzone {
namespace {

Scenario base_scenario() {
  Scenario s;
  s.camera = {600.0, kDefaultSubjectExtentM, "front"};
  s.seed = 1;
  return s;
}

SubjectTrack track(std::string id, std::vector<TrajectoryPoint> pts,
                   double height = kDefaultSubjectExtentM) {
  return {std::move(id), height, std::move(pts)};
}

TEST(Synth, DefaultHeightAtTwoMeters) {
  EXPECT_NEAR(synth_bbox_height(2.0, 1.6256, 600.0), 487.68, 1e-9);
}

TEST(Synth, ZeroSigmaIsExactAndConsumesNothing) {
  Rng a(5), b(5);
  const SynthesizedHeight h = synth_bbox_height(2.0, 1.6256, 600.0, 0.0, a);
  EXPECT_EQ(h.height_px, synth_bbox_height(2.0, 1.6256, 600.0));
  EXPECT_FALSE(h.clamped);
  EXPECT_EQ(a.uniform(), b.uniform());
}

TEST(Synth, ClampsToOnePixel) {
  Rng rng(3);
  const SynthesizedHeight h = synth_bbox_height(1000.0, 0.01, 1.0, 50.0, rng);
  EXPECT_GE(h.height_px, 1.0);
  // 1e-5 px + noise of sigma 50 lands below 1 px about half the time.
  int clamped = 0;
  for (int i = 0; i < 200; ++i) clamped += synth_bbox_height(1000.0, 0.01, 1.0, 50.0, rng).clamped;
  EXPECT_GT(clamped, 50);
  EXPECT_LT(clamped, 150);
}

TEST(Rng, GaussianMomentsAndDeterminism) {
  Rng rng(42);
  const int n = 100000;
  double sum = 0, sq = 0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.gaussian(2.0);
    sum += x;
    sq += x * x;
  }
  const double mean = sum / n;
  const double sd = std::sqrt(sq / n - mean * mean);
  EXPECT_NEAR(mean, 0.0, 0.05);
  EXPECT_NEAR(sd, 2.0, 0.04);
  Rng x(9), y(9);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(x.gaussian(1.0), y.gaussian(1.0));
}

TEST(RunScenario, NoiselessFrontFidelity) {
  Scenario s = base_scenario();
  s.subjects.push_back(track("p", {{0, Sector::Front, 2.0}, {100, Sector::Front, 0.7}}));
  const SimulationLog log = run_scenario(s);
  const auto a = log.assessments();
  ASSERT_EQ(a.size(), 2u);
  EXPECT_NEAR(*a[0].distance_m, 2.0, 1e-9);
  EXPECT_EQ(a[0].tag, ZoneTag::Safe);
  EXPECT_NEAR(*a[1].distance_m, 0.7, 1e-9);
  EXPECT_EQ(a[1].tag, ZoneTag::Warning);
}

TEST(RunScenario, HeightMismatchScalesEstimate) {
  // A subject 10% taller than assumed reads 10% closer.
  for (double d : {0.5, 1.0, 2.5, 4.0}) {
    Scenario s = base_scenario();
    s.subjects.push_back(track("tall", {{0, Sector::Front, d}}, 1.1 * kDefaultSubjectExtentM));
    const auto a = run_scenario(s).assessments();
    ASSERT_EQ(a.size(), 1u);
    EXPECT_NEAR(*a[0].distance_m, d / 1.1, 1e-9 * d);
  }
}

TEST(RunScenario, SideSectorEmitsMotionThenRange) {
  Scenario s = base_scenario();
  s.subjects.push_back(track("w", {{0, Sector::Left, 0.8}}));
  const SimulationLog log = run_scenario(s);
  ASSERT_EQ(log.events.size(), 2u);
  EXPECT_TRUE(std::holds_alternative<MotionEvent>(log.events[0]));
  EXPECT_TRUE(std::holds_alternative<RangeReading>(log.events[1]));
  const auto a = log.assessments();
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0].sector, Sector::Left);
  EXPECT_EQ(a[0].tag, ZoneTag::Warning);
  EXPECT_EQ(a[0].color.name, "Orange");
}

TEST(RunScenario, BeyondCeilingIsOutOfRange) {
  Scenario s = base_scenario();
  s.subjects.push_back(track("far", {{0, Sector::Back, 5.0}}));
  const auto log = run_scenario(s);
  EXPECT_FALSE(std::get<RangeReading>(log.events[1]).distance_m);
  const auto a = log.assessments();
  ASSERT_EQ(a.size(), 1u);
  EXPECT_TRUE(a[0].out_of_range());
  EXPECT_EQ(a[0].tag, ZoneTag::Safe);
}

TEST(RunScenario, RangeNoiseStandardDeviation) {
  Scenario s = base_scenario();
  s.noise.noise_sigma_m = 0.02;
  s.seed = 2024;
  std::vector<TrajectoryPoint> pts;
  for (int i = 0; i < 12000; ++i) pts.push_back({i * 10, Sector::Right, 2.0});
  s.subjects.push_back(track("n", pts));
  const SimulationLog log = run_scenario(s);

  std::vector<double> err;
  for (const auto& e : log.events) {
    if (const auto* r = std::get_if<RangeReading>(&e)) err.push_back(*r->distance_m - 2.0);
  }
  ASSERT_EQ(err.size(), 12000u);
  const double mean = std::accumulate(err.begin(), err.end(), 0.0) / err.size();
  double sq = 0;
  for (double x : err) sq += (x - mean) * (x - mean);
  const double sd = std::sqrt(sq / (err.size() - 1));
  EXPECT_NEAR(sd, 0.02, 0.02 * 0.05);
  EXPECT_EQ(log.dropped_readings, 0u);
}

TEST(RunScenario, EveryRangeFollowsItsMotion) {
  Scenario s = base_scenario();
  s.noise = {2.0, 0.05};
  s.seed = 77;
  s.subjects.push_back(track("a", {{0, Sector::Left, 1.0}, {50, Sector::Back, 0.3}}));
  s.subjects.push_back(track("b", {{0, Sector::Right, 3.0}, {50, Sector::Left, 4.5}}));
  s.subjects.push_back(track("c", {{0, Sector::Front, 1.0}, {50, Sector::Front, 0.4}}));
  const SimulationLog log = run_scenario(s);
  std::array<bool, 4> armed{};
  for (const auto& e : log.events) {
    if (const auto* m = std::get_if<MotionEvent>(&e)) armed[static_cast<int>(m->sector)] = true;
    if (const auto* r = std::get_if<RangeReading>(&e)) {
      ASSERT_TRUE(armed[static_cast<int>(r->sector)]);
      armed[static_cast<int>(r->sector)] = false;
    }
  }
  EXPECT_EQ(log.dropped_readings, 0u);
}

TEST(RunScenario, RepeatedRunsAreBitIdentical) {
  Scenario s = io::load_scenario(PROXZONE_SCENARIO_DIR "/zone_walkthrough.json");
  s.noise = {1.5, 0.03};
  s.subjects.push_back(track("cam", {{0, Sector::Front, 1.7}, {1500, Sector::Front, 0.6}}));
  const SimulationLog a = run_scenario(s, {{}, true});
  const SimulationLog b = run_scenario(s, {{}, true});
  ASSERT_EQ(a.events, b.events);
  ASSERT_EQ(a.assessments(), b.assessments());
  ASSERT_EQ(a.overlays, b.overlays);
  s.seed += 1;
  EXPECT_NE(run_scenario(s).events, a.events);
}

TEST(RunScenario, WalkthroughProgression) {
  const Scenario s = io::load_scenario(PROXZONE_SCENARIO_DIR "/zone_walkthrough.json");
  std::vector<ZoneTag> left, right;
  for (const auto& a : run_scenario(s).assessments()) {
    (a.sector == Sector::Left ? left : right).push_back(a.tag);
  }
  EXPECT_EQ(left, (std::vector{ZoneTag::Safe, ZoneTag::Warning, ZoneTag::Unsafe}));
  EXPECT_EQ(right, (std::vector{ZoneTag::Safe, ZoneTag::Safe, ZoneTag::Safe}));
}

TEST(RunScenario, EmptySubjectsIsEmptyLog) {
  const SimulationLog log = run_scenario(base_scenario());
  EXPECT_TRUE(log.entries.empty());
  EXPECT_TRUE(log.events.empty());
  EXPECT_EQ(compare_to_markers(base_scenario()).summary.count, 0u);
}

TEST(Validate, CollectsEveryViolation) {
  Scenario s = base_scenario();
  s.camera.focal_length_px = -1;
  s.subjects.push_back(track("a", {{10, Sector::Left, 1.0}, {5, Sector::Left, 0.0}}));
  s.subjects.push_back(track("a", {{0, Sector::Front, 1.0}, {0, Sector::Front, 2.0}}));
  try {
    validate(s);
    FAIL();
  } catch (const ValidationError& e) {
    const auto& v = e.violations();
    auto has = [&](std::string_view needle) {
      return std::any_of(v.begin(), v.end(),
                         [&](const std::string& x) { return x.find(needle) != std::string::npos; });
    };
    EXPECT_TRUE(has("camera.focal_length_px"));
    EXPECT_TRUE(has("subjects[0].trajectory[1].timestamp_ms"));
    EXPECT_TRUE(has("subjects[0].trajectory[1].true_distance_m"));
    EXPECT_TRUE(has("subjects[1].subject_id: duplicate"));
    EXPECT_TRUE(has("subjects[1].trajectory[1].timestamp_ms"));
  }
}

TEST(CompareToMarkers, MarkerLabelsAndMismatch) {
  const Scenario s = io::load_scenario(PROXZONE_SCENARIO_DIR "/marker_offsets.json");
  const PercentErrorReport r = compare_to_markers(s);
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_EQ(r.rows[0].label, "right side");
  EXPECT_NEAR(r.rows[0].detected, 2.02, 1e-9);
  EXPECT_NEAR(r.rows[1].detected, 2.95, 1e-9);
  EXPECT_NEAR(r.rows[2].detected, 4.06, 1e-9);
}

TEST(MeasurementsFrom, FallbackLabel) {
  Scenario s = base_scenario();
  s.subjects.push_back(track("q", {{250, Sector::Back, 1.3}}));
  const auto m = measurements_from(run_scenario(s));
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].label, "q@250ms/back");
  EXPECT_DOUBLE_EQ(m[0].detected, 1.3);
  EXPECT_DOUBLE_EQ(m[0].actual, 1.3);
}

}  // namespace
}  // namespace proxzone
