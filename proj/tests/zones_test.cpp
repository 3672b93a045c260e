#include "proxzone/zones.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "proxzone/errors.hpp"

namespace proxzone {
namespace {

TEST(Classify, TableBoundaries) {
  EXPECT_EQ(classify(1.0), (Classification{ZoneTag::Safe, {"Green", {0, 128, 0}}}));
  EXPECT_EQ(classify(0.5), (Classification{ZoneTag::Unsafe, {"Red", {255, 0, 0}}}));
  EXPECT_EQ(classify(0.75), (Classification{ZoneTag::Warning, {"Orange", {255, 165, 0}}}));
  EXPECT_EQ(classify(0.9995).tag, ZoneTag::Warning);
}

TEST(Classify, EpsilonAroundBoundaries) {
  constexpr double eps = 1e-9;
  EXPECT_EQ(classify_tag(0.5), ZoneTag::Unsafe);
  EXPECT_EQ(classify_tag(0.5 + eps), ZoneTag::Warning);
  EXPECT_EQ(classify_tag(1.0 - eps), ZoneTag::Warning);
  EXPECT_EQ(classify_tag(1.0), ZoneTag::Safe);
  EXPECT_EQ(classify_tag(std::numeric_limits<double>::min()), ZoneTag::Unsafe);
  EXPECT_EQ(classify_tag(1e9), ZoneTag::Safe);
}

TEST(Classify, RejectsNonPositiveAndNonFinite) {
  EXPECT_THROW(classify(0.0), InvalidArgument);
  EXPECT_THROW(classify(-0.3), InvalidArgument);
  EXPECT_THROW(classify(std::numeric_limits<double>::infinity()), InvalidArgument);
  EXPECT_THROW(classify(std::numeric_limits<double>::quiet_NaN()), InvalidArgument);
}

TEST(Classify, PartitionAndMonotonicity) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-12.0, 3.0);
  std::vector<double> ds;
  for (int i = 0; i < 5000; ++i) ds.push_back(std::pow(10.0, u(gen)));
  for (double d : {0.5, 1.0, 0.4999999999, 0.5000000001, 0.9999999999}) ds.push_back(d);
  std::sort(ds.begin(), ds.end());

  int prev = severity(ZoneTag::Unsafe);
  for (double d : ds) {
    const ZoneTag t = classify_tag(d);
    // Exactly one interval contains d.
    const int hits = (d <= 0.5) + (d > 0.5 && d < 1.0) + (d >= 1.0);
    ASSERT_EQ(hits, 1);
    const ZoneTag expect = d <= 0.5 ? ZoneTag::Unsafe : d < 1.0 ? ZoneTag::Warning : ZoneTag::Safe;
    ASSERT_EQ(t, expect) << d;
    ASSERT_LE(severity(t), prev) << d;
    prev = severity(t);
  }
}

TEST(Classify, CustomThresholdsAndColors) {
  ColorScheme colors;
  colors.set(ZoneTag::Warning, {"Amber", {255, 191, 0}});
  const ZoneClassifier c({0.3, 2.0}, colors);
  EXPECT_EQ(c.classify(0.3).tag, ZoneTag::Unsafe);
  EXPECT_EQ(c.classify(1.5), (Classification{ZoneTag::Warning, {"Amber", {255, 191, 0}}}));
  EXPECT_EQ(c.classify(2.0).tag, ZoneTag::Safe);
  EXPECT_THROW(ZoneClassifier({1.0, 1.0}, {}), InvalidArgument);
  EXPECT_THROW(ZoneClassifier({-1.0, 1.0}, {}), InvalidArgument);
}

ZoneAssessment make(Sector s, ZoneTag t, std::optional<double> d = std::nullopt,
                    std::optional<std::string> id = std::nullopt) {
  ZoneAssessment a;
  a.sector = s;
  a.tag = t;
  a.color = ColorScheme{}.color_for(t);
  a.distance_m = d;
  a.subject_id = std::move(id);
  return a;
}

TEST(MostSevere, Examples) {
  EXPECT_EQ(most_severe({}), ZoneTag::Safe);
  const std::vector<ZoneAssessment> two{make(Sector::Left, ZoneTag::Safe),
                                        make(Sector::Left, ZoneTag::Warning)};
  EXPECT_EQ(most_severe(two), ZoneTag::Warning);
  const std::vector<ZoneAssessment> three{make(Sector::Left, ZoneTag::Warning),
                                          make(Sector::Left, ZoneTag::Unsafe),
                                          make(Sector::Left, ZoneTag::Safe)};
  EXPECT_EQ(most_severe(three), ZoneTag::Unsafe);
}

TEST(RenderOverlay, IdleFrame) {
  const OverlayFrame f = render_overlay(10, {}, {});
  EXPECT_EQ(f.timestamp_ms, 10);
  for (Sector s : kAllSectors) {
    const SectorEntry& e = f.sectors[static_cast<int>(s)];
    EXPECT_EQ(e.sector, s);
    EXPECT_EQ(e.tag, ZoneTag::Safe);
    EXPECT_EQ(e.color.name, "Green");
    EXPECT_FALSE(e.distance_m);
  }
  EXPECT_TRUE(f.subjects.empty());
}

TEST(RenderOverlay, LeftWarning) {
  const std::vector<ZoneAssessment> sides{make(Sector::Left, ZoneTag::Warning, 0.8)};
  const OverlayFrame f = render_overlay(0, sides, {});
  const SectorEntry& left = f.sectors[static_cast<int>(Sector::Left)];
  EXPECT_EQ(left.tag, ZoneTag::Warning);
  EXPECT_EQ(left.color.name, "Orange");
  EXPECT_EQ(left.distance_m, 0.8);
  EXPECT_EQ(f.sectors[static_cast<int>(Sector::Right)].tag, ZoneTag::Safe);
}

TEST(RenderOverlay, TwoFrontSubjectsOrderIndependent) {
  const auto a = make(Sector::Front, classify(0.4).tag, 0.4, "a");
  const auto b = make(Sector::Front, classify(1.2).tag, 1.2, "b");
  const std::vector<ZoneAssessment> ab{a, b};
  const std::vector<ZoneAssessment> ba{b, a};
  const OverlayFrame f1 = render_overlay(0, {}, ab);
  const OverlayFrame f2 = render_overlay(0, {}, ba);
  EXPECT_EQ(f1, f2);
  ASSERT_EQ(f1.subjects.size(), 2u);
  EXPECT_EQ(f1.subjects[0].tag, ZoneTag::Unsafe);
  EXPECT_EQ(f1.subjects[0].color.name, "Red");
  EXPECT_EQ(f1.subjects[1].tag, ZoneTag::Safe);
  EXPECT_EQ(f1.subjects[1].color.name, "Green");
  const SectorEntry& front = f1.sectors[static_cast<int>(Sector::Front)];
  EXPECT_EQ(front.tag, ZoneTag::Unsafe);
  EXPECT_EQ(front.distance_m, 0.4);
}

TEST(RenderOverlay, SideOrderIndependent) {
  const std::vector<ZoneAssessment> x{make(Sector::Back, ZoneTag::Unsafe, 0.2),
                                      make(Sector::Left, ZoneTag::Safe)};
  const std::vector<ZoneAssessment> y{x[1], x[0]};
  EXPECT_EQ(render_overlay(3, x, {}), render_overlay(3, y, {}));
}

TEST(RenderOverlay, RejectsDuplicates) {
  const std::vector<ZoneAssessment> dup{make(Sector::Left, ZoneTag::Safe, 2.0),
                                        make(Sector::Left, ZoneTag::Warning, 0.7)};
  EXPECT_THROW(render_overlay(0, dup, {}), InvalidArgument);
  const std::vector<ZoneAssessment> dup_front{make(Sector::Front, ZoneTag::Safe, 2.0, "a"),
                                              make(Sector::Front, ZoneTag::Safe, 3.0, "a")};
  EXPECT_THROW(render_overlay(0, {}, dup_front), InvalidArgument);
}

TEST(RenderOverlay, OutOfRangeSector) {
  const std::vector<ZoneAssessment> sides{make(Sector::Back, ZoneTag::Safe)};
  const OverlayFrame f = render_overlay(0, sides, {});
  EXPECT_TRUE(f.sectors[static_cast<int>(Sector::Back)].out_of_range);
}

TEST(RenderOverlaySvg, ContainsSectorColors) {
  const std::vector<ZoneAssessment> sides{make(Sector::Left, ZoneTag::Warning, 0.8)};
  const std::vector<ZoneAssessment> front{make(Sector::Front, ZoneTag::Unsafe, 0.4, "p1")};
  const std::string svg = render_overlay_svg(render_overlay(42, sides, front));
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("data-sector=\"left\""), std::string::npos);
  EXPECT_NE(svg.find("#ffa500"), std::string::npos);  // orange
  EXPECT_NE(svg.find("data-subject=\"p1\""), std::string::npos);
  EXPECT_NE(svg.find("t=42 ms"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(TagNames, RoundTrip) {
  for (ZoneTag t : {ZoneTag::Safe, ZoneTag::Warning, ZoneTag::Unsafe}) {
    EXPECT_EQ(parse_tag(wire_name(t)), t);
    EXPECT_EQ(parse_tag(display_name(t)), t);
  }
  EXPECT_FALSE(parse_tag("danger"));
  for (Sector s : kAllSectors) EXPECT_EQ(parse_sector(to_string(s)), s);
  EXPECT_FALSE(parse_sector("up"));
}

}  // namespace
}  // namespace proxzone
