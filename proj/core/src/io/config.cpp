#include "proxzone/io/config.hpp"

#include <cmath>
#include <exception>

#include <fmt/format.h>

#include "proxzone/errors.hpp"
#include "proxzone/io/text.hpp"

namespace proxzone::io {

FusionConfig Config::fusion() const {
  FusionConfig f;
  f.hold_ms = hold_ms;
  f.max_range_m = max_range_m;
  f.min_confidence = min_confidence;
  f.classifier = classifier();
  return f;
}

namespace {

// "Orange" or "Orange:255,165,0". A bare name keeps the current RGB.
std::optional<Color> parse_color(std::string_view text, const Color& current) {
  const auto colon = text.find(':');
  Color c{std::string(trim(text.substr(0, colon))), current.rgb};
  if (c.name.empty()) return std::nullopt;
  if (colon == std::string_view::npos) return c;

  std::string_view rest = text.substr(colon + 1);
  std::array<std::uint8_t, 3> rgb{};
  for (int i = 0; i < 3; ++i) {
    const auto comma = rest.find(',');
    if ((i < 2) == (comma == std::string_view::npos)) return std::nullopt;
    const auto v = parse_integer(rest.substr(0, comma));
    if (!v || *v < 0 || *v > 255) return std::nullopt;
    rgb[i] = static_cast<std::uint8_t>(*v);
    rest = i < 2 ? rest.substr(comma + 1) : std::string_view{};
  }
  c.rgb = {rgb[0], rgb[1], rgb[2]};
  return c;
}

}  // namespace

Config parse_config(std::string_view text, std::string_view source) {
  Config config;
  std::vector<std::string> errors;
  const auto bad = [&](const KeyValue& kv, std::string_view what) {
    errors.push_back(
        fmt::format("{}:{}: {}: {}, got '{}'", source, kv.line, kv.key, what, kv.value));
  };
  const auto positive = [&](const KeyValue& kv, double& dst) {
    const auto v = parse_decimal(kv.value);
    if (!v || !std::isfinite(*v) || *v <= 0.0) return bad(kv, "expected a positive decimal");
    dst = *v;
  };

  for (const KeyValue& kv : parse_key_values(text, source)) {
    if (kv.key == "zone.safe_min_m") {
      positive(kv, config.zone.safe_min_m);
    } else if (kv.key == "zone.unsafe_max_m") {
      positive(kv, config.zone.unsafe_max_m);
    } else if (kv.key == "optics.assumed_subject_extent_m") {
      positive(kv, config.assumed_subject_extent_m);
    } else if (kv.key == "sensor.max_range_m") {
      positive(kv, config.max_range_m);
    } else if (kv.key == "fusion.hold_ms") {
      const auto v = parse_integer(kv.value);
      if (!v || *v < 0) {
        bad(kv, "expected a non-negative integer");
      } else {
        config.hold_ms = *v;
      }
    } else if (kv.key == "detector.min_confidence") {
      const auto v = parse_decimal(kv.value);
      if (!v || !(*v >= 0.0 && *v <= 1.0)) {
        bad(kv, "expected a value in [0,1]");
      } else {
        config.min_confidence = *v;
      }
    } else if (kv.key == "eval.denominator") {
      const auto d = parse_denominator(kv.value);
      if (!d) {
        bad(kv, "expected 'detected' or 'actual'");
      } else {
        config.denominator = *d;
      }
    } else if (kv.key.starts_with("color.")) {
      const auto tag = parse_tag(std::string_view(kv.key).substr(6));
      if (!tag) {
        errors.push_back(fmt::format("{}:{}: unknown key '{}'", source, kv.line, kv.key));
        continue;
      }
      const auto c = parse_color(kv.value, config.colors.color_for(*tag));
      if (!c) {
        bad(kv, "expected Name or Name:r,g,b");
      } else {
        config.colors.set(*tag, *c);
      }
    } else {
      errors.push_back(fmt::format("{}:{}: unknown key '{}'", source, kv.line, kv.key));
    }
  }
  if (errors.empty() && !(config.zone.unsafe_max_m < config.zone.safe_min_m)) {
    errors.push_back(fmt::format("{}: zone.unsafe_max_m ({}) must be < zone.safe_min_m ({})",
                                 source, config.zone.unsafe_max_m, config.zone.safe_min_m));
  }
  if (!errors.empty()) throw ValidationError(std::move(errors));
  return config;
}

Config load_config(const std::filesystem::path& path) {
  return parse_config(read_file(path), path.string());
}

std::string format_config(const Config& c) {
  std::string out;
  out += fmt::format("zone.safe_min_m={}\n", format_decimal(c.zone.safe_min_m));
  out += fmt::format("zone.unsafe_max_m={}\n", format_decimal(c.zone.unsafe_max_m));
  out += fmt::format("optics.assumed_subject_extent_m={}\n",
                     format_decimal(c.assumed_subject_extent_m));
  out += fmt::format("fusion.hold_ms={}\n", c.hold_ms);
  out += fmt::format("sensor.max_range_m={}\n", format_decimal(c.max_range_m));
  out += fmt::format("detector.min_confidence={}\n", format_decimal(c.min_confidence));
  out += fmt::format("eval.denominator={}\n", to_string(c.denominator));
  for (ZoneTag t : {ZoneTag::Safe, ZoneTag::Warning, ZoneTag::Unsafe}) {
    const Color& col = c.colors.color_for(t);
    out += fmt::format("color.{}={}:{},{},{}\n", wire_name(t), col.name, col.rgb.r, col.rgb.g,
                       col.rgb.b);
  }
  return out;
}

}  // namespace proxzone::io
