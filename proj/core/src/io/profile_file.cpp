#include "proxzone/io/profile_file.hpp"

#include <cmath>

#include <fmt/format.h>

#include "proxzone/errors.hpp"
#include "proxzone/io/text.hpp"

namespace proxzone::io {

std::string format_profile(const CalibrationProfile& profile) {
  return fmt::format("camera_id={}\nfocal_length_px={}\nassumed_subject_extent_m={}\n",
                     profile.camera_id, format_decimal(profile.focal_length_px),
                     format_decimal(profile.assumed_subject_extent_m));
}

CalibrationProfile parse_profile(std::string_view text, std::string_view source,
                                 double default_extent_m) {
  CalibrationProfile profile;
  profile.assumed_subject_extent_m = default_extent_m;
  bool have_focal = false;
  std::vector<std::string> errors;

  const auto positive = [&](const KeyValue& kv, double& dst) {
    const auto v = parse_decimal(kv.value);
    if (!v || !(*v > 0.0) || !std::isfinite(*v)) {
      errors.push_back(fmt::format("{}:{}: {}: expected a positive decimal, got '{}'", source,
                                   kv.line, kv.key, kv.value));
      return false;
    }
    dst = *v;
    return true;
  };

  for (const KeyValue& kv : parse_key_values(text, source)) {
    if (kv.key == "camera_id") {
      profile.camera_id = kv.value;
    } else if (kv.key == "focal_length_px") {
      have_focal = true;
      positive(kv, profile.focal_length_px);
    } else if (kv.key == "assumed_subject_extent_m") {
      positive(kv, profile.assumed_subject_extent_m);
    } else {
      errors.push_back(fmt::format("{}:{}: unknown key '{}'", source, kv.line, kv.key));
    }
  }
  if (!have_focal) errors.push_back(fmt::format("{}: focal_length_px: missing", source));
  if (!errors.empty()) throw ValidationError(std::move(errors));
  return profile;
}

CalibrationProfile load_profile(const std::filesystem::path& path, double default_extent_m) {
  return parse_profile(read_file(path), path.string(), default_extent_m);
}

void save_profile(const std::filesystem::path& path, const CalibrationProfile& profile) {
  validate(profile);
  write_file(path, format_profile(profile));
}

}  // namespace proxzone::io
