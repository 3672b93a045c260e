#include <filesystem>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "proxzone/errors.hpp"
#include "proxzone/io/config.hpp"
#include "proxzone/io/jsonl.hpp"
#include "proxzone/io/profile_file.hpp"
#include "proxzone/io/scenario_file.hpp"
#include "proxzone/io/text.hpp"

namespace proxzone::io {
namespace {

namespace fs = std::filesystem;

// First violation of a ValidationError thrown by f, or "" if none.
template <typename F>
std::string first_violation(F&& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    return e.violations().empty() ? "?" : e.violations().front();
  }
  return "";
}

TEST(Text, FormatDecimal) {
  EXPECT_EQ(format_decimal(200.0), "200.0");
  EXPECT_EQ(format_decimal(1.6256), "1.6256");
  EXPECT_EQ(format_decimal(0.1 + 0.2), "0.30000000000000004");
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(gen);
    EXPECT_EQ(parse_decimal(format_decimal(v)), v);
  }
}

TEST(Text, StrictParsing) {
  EXPECT_EQ(parse_decimal(" 2.5 "), 2.5);
  EXPECT_FALSE(parse_decimal("2.5m"));
  EXPECT_FALSE(parse_decimal("1,5"));
  EXPECT_FALSE(parse_decimal(""));
  EXPECT_EQ(parse_integer("2000"), 2000);
  EXPECT_FALSE(parse_integer("20.0"));
}

TEST(Text, KeyValues) {
  const auto kv = parse_key_values("# comment\n\n a = b \nc=d=e\n", "x");
  ASSERT_EQ(kv.size(), 2u);
  EXPECT_EQ(kv[0].key, "a");
  EXPECT_EQ(kv[0].value, "b");
  EXPECT_EQ(kv[0].line, 3);
  EXPECT_EQ(kv[1].value, "d=e");
  EXPECT_EQ(first_violation([] { parse_key_values("novalue\n", "cfg"); }).rfind("cfg:1", 0), 0u);
}

TEST(Profile, RoundTrip) {
  const CalibrationProfile p{812.3456789, 1.71, "cam-2"};
  EXPECT_EQ(parse_profile(format_profile(p), "p"), p);
  EXPECT_NE(format_profile({200.0, 1.6256, "front"}).find("focal_length_px=200.0"),
            std::string::npos);
}

TEST(Profile, DefaultsAndErrors) {
  const CalibrationProfile p = parse_profile("focal_length_px=600\n", "p", 1.8);
  EXPECT_EQ(p.assumed_subject_extent_m, 1.8);
  EXPECT_EQ(p.camera_id, "front");
  EXPECT_NE(first_violation([] { parse_profile("camera_id=x\n", "p"); }).find("focal_length_px"),
            std::string::npos);
  EXPECT_NE(first_violation([] { parse_profile("focal_length_px=-1\n", "p"); }).find("positive"),
            std::string::npos);
  EXPECT_NE(first_violation([] { parse_profile("focal_length_px=1\nzoom=2\n", "p"); })
                .find("unknown key 'zoom'"),
            std::string::npos);
}

TEST(Profile, FileErrors) {
  EXPECT_THROW(load_profile("/nonexistent/dir/profile.txt"), IoError);
  EXPECT_THROW(save_profile("/nonexistent/dir/profile.txt", {1, 1, "a"}), IoError);
  const fs::path tmp = fs::temp_directory_path() / "proxzone_io_test_profile.txt";
  save_profile(tmp, {321.0, 1.5, "side"});
  EXPECT_EQ(load_profile(tmp), (CalibrationProfile{321.0, 1.5, "side"}));
  fs::remove(tmp);
}

TEST(Config, EmptyIsDefaults) { EXPECT_EQ(parse_config("", "c"), Config{}); }

TEST(Config, AllKeys) {
  const Config c = parse_config(
      "zone.safe_min_m=1.5\nzone.unsafe_max_m=0.4\noptics.assumed_subject_extent_m=1.8\n"
      "fusion.hold_ms=500\nsensor.max_range_m=3.5\ndetector.min_confidence=0.25\n"
      "eval.denominator=actual\ncolor.warning=Amber:255,191,0\ncolor.safe=Lime\n",
      "c");
  EXPECT_EQ(c.zone.safe_min_m, 1.5);
  EXPECT_EQ(c.zone.unsafe_max_m, 0.4);
  EXPECT_EQ(c.assumed_subject_extent_m, 1.8);
  EXPECT_EQ(c.hold_ms, 500);
  EXPECT_EQ(c.max_range_m, 3.5);
  EXPECT_EQ(c.min_confidence, 0.25);
  EXPECT_EQ(c.denominator, Denominator::Actual);
  EXPECT_EQ(c.colors.color_for(ZoneTag::Warning), (Color{"Amber", {255, 191, 0}}));
  EXPECT_EQ(c.colors.color_for(ZoneTag::Safe).name, "Lime");
  EXPECT_EQ(parse_config(format_config(c), "c"), c);
  EXPECT_EQ(c.fusion().hold_ms, 500);
}

TEST(Config, ErrorsCollected) {
  try {
    parse_config("zone.safe_min_m=abc\nfusion.hold_ms=-3\nbogus=1\n", "cfg");
    FAIL();
  } catch (const ValidationError& e) {
    ASSERT_EQ(e.violations().size(), 3u);
    EXPECT_NE(e.violations()[0].find("cfg:1: zone.safe_min_m"), std::string::npos);
    EXPECT_NE(e.violations()[2].find("unknown key 'bogus'"), std::string::npos);
  }
  EXPECT_NE(first_violation([] { parse_config("zone.unsafe_max_m=2\n", "c"); })
                .find("must be <"),
            std::string::npos);
}

TEST(Scenario, ShippedFilesRoundTrip) {
  for (const char* name : {"marker_offsets.json", "zone_walkthrough.json"}) {
    const Scenario s = load_scenario(fs::path(PROXZONE_SCENARIO_DIR) / name);
    EXPECT_EQ(parse_scenario(format_scenario(s), "rt"), s) << name;
  }
}

TEST(Scenario, MinimalDefaults) {
  const Scenario s =
      parse_scenario(R"({"camera":{"focal_length_px":500},"subjects":[]})", "min");
  EXPECT_EQ(s.camera.assumed_subject_extent_m, kDefaultSubjectExtentM);
  EXPECT_TRUE(s.markers.empty());
  EXPECT_EQ(s.seed, 0u);
  EXPECT_EQ(s.noise, NoiseModel{});
}

TEST(Scenario, MarkerDefaultLabel) {
  const Scenario s = parse_scenario(
      R"({"camera":{"focal_length_px":500},"subjects":[],"markers":[{"distance_m":2}]})", "m");
  EXPECT_EQ(s.markers.at(0).label, "2.0 m");
}

TEST(Scenario, SchemaViolationsNamePaths) {
  try {
    parse_scenario(R"({"camera":{"focal_length_px":"x","lens":1},
                       "subjects":[{"subject_id":"a","trajectory":[{"timestamp_ms":0,
                         "sector":"up","true_distance_m":1}]}],"extra":true})",
                   "bad.json");
    FAIL();
  } catch (const ValidationError& e) {
    std::string all;
    for (const auto& v : e.violations()) all += v + "\n";
    EXPECT_NE(all.find("bad.json: camera.focal_length_px"), std::string::npos) << all;
    EXPECT_NE(all.find("camera.lens"), std::string::npos) << all;
    EXPECT_NE(all.find("subjects[0].trajectory[0].sector"), std::string::npos) << all;
    EXPECT_NE(all.find("extra"), std::string::npos) << all;
  }
  EXPECT_NE(first_violation([] { parse_scenario("{not json", "j"); }).find("invalid JSON"),
            std::string::npos);
  EXPECT_NE(first_violation([] { parse_scenario(R"({"camera":{"focal_length_px":1}})", "j"); })
                .find("subjects"),
            std::string::npos);
  EXPECT_THROW(load_scenario("/nonexistent/scenario.json"), IoError);
}

TEST(Jsonl, Detections) {
  std::istringstream in(
      R"({"t_ms":0,"subject_id":"a","bbox":{"x":1,"y":2,"w":30,"h":80},"confidence":0.9})"
      "\n\n"
      R"({"t_ms":0,"subject_id":"b","bbox":{"x":1,"y":2,"w":30,"h":40.5},"confidence":0.8})"
      "\n"
      R"({"t_ms":40,"subject_id":"a","bbox":{"x":1,"y":2,"w":30,"h":81},"confidence":0.9})"
      "\n");
  const auto frames = read_detections(in, "det");
  ASSERT_EQ(frames.size(), 2u);
  EXPECT_EQ(frames[0].boxes.size(), 2u);
  EXPECT_EQ(frames[0].boxes[1].height_px, 40.5);
  EXPECT_EQ(frames[1].timestamp_ms, 40);
  EXPECT_EQ(detection_line(0, frames[0].boxes[0]),
            R"({"t_ms":0,"subject_id":"a","bbox":{"x":1,"y":2,"w":30,"h":80},"confidence":0.9})");
}

TEST(Jsonl, ErrorsNameLineAndField) {
  std::istringstream dup(
      R"({"t_ms":0,"subject_id":"a","bbox":{"x":1,"y":2,"w":3,"h":4},"confidence":0.9})"
      "\n"
      R"({"t_ms":0,"subject_id":"a","bbox":{"x":1,"y":2,"w":3,"h":4},"confidence":0.9})"
      "\n");
  EXPECT_EQ(first_violation([&] { read_detections(dup, "d"); }).rfind("d:2: subject_id", 0), 0u);

  std::istringstream front(R"({"t_ms":0,"sector":"front"})" "\n");
  EXPECT_EQ(first_violation([&] { read_motions(front, "m"); }).rfind("m:1: sector", 0), 0u);

  std::istringstream neg(R"({"t_ms":0,"sector":"left","distance_m":-1})" "\n");
  EXPECT_EQ(first_violation([&] { read_ranges(neg, "r"); }).rfind("r:1: distance_m", 0), 0u);

  std::istringstream junk("{\"t_ms\":\n");
  EXPECT_NE(first_violation([&] { read_ranges(junk, "r"); }).find("invalid JSON"),
            std::string::npos);

  std::istringstream oor(R"({"t_ms":0,"sector":"left","tag":"safe","color":"Green"})" "\n");
  EXPECT_NE(first_violation([&] { read_events(oor, "e"); }).find("out_of_range"),
            std::string::npos);
}

TEST(Jsonl, RangesWithNull) {
  std::istringstream in(R"({"t_ms":5,"sector":"back","distance_m":null})" "\n"
                        R"({"t_ms":6,"sector":"left","distance_m":1.25})" "\n");
  const auto r = read_ranges(in, "r");
  ASSERT_EQ(r.size(), 2u);
  EXPECT_FALSE(r[0].distance_m);
  EXPECT_EQ(r[1].distance_m, 1.25);
  EXPECT_EQ(range_line(r[0]), R"({"t_ms":5,"sector":"back","distance_m":null})");
}

TEST(Jsonl, EventsRoundTripProperty) {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> dist(1e-3, 10.0);
  std::uniform_int_distribution<int> pick(0, 3);
  const ColorScheme colors;
  std::vector<ZoneAssessment> all;
  for (int i = 0; i < 500; ++i) {
    ZoneAssessment a;
    a.timestamp_ms = i * 7;
    a.sector = kAllSectors[pick(gen)];
    if (a.sector == Sector::Front) a.subject_id = "s" + std::to_string(pick(gen));
    if (pick(gen) != 0) {
      a.distance_m = dist(gen);
      a.tag = classify_tag(*a.distance_m);
    } else {
      a.tag = ZoneTag::Safe;
    }
    a.color = colors.color_for(a.tag);
    all.push_back(a);
  }
  std::ostringstream out;
  write_events(out, all);
  std::istringstream in(out.str());
  EXPECT_EQ(read_events(in, "events"), all);
}

TEST(Jsonl, FormatInputsSplitsStreams) {
  BoundingBox b{0, 0, 10, 20, 1.0, "p"};
  const std::vector<SensorEvent> ev{MotionEvent{0, Sector::Left},
                                    RangeReading{0, Sector::Left, 0.8},
                                    DetectionFrame{0, {b}}};
  const InputStreams s = format_inputs(ev);
  std::istringstream d(s.detections), m(s.motions), r(s.ranges);
  EXPECT_EQ(read_detections(d, "d").size(), 1u);
  EXPECT_EQ(read_motions(m, "m"), (std::vector{MotionEvent{0, Sector::Left}}));
  EXPECT_EQ(read_ranges(r, "r"), (std::vector{RangeReading{0, Sector::Left, 0.8}}));
}

}  // namespace
}  // namespace proxzone::io
