#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "proxzone/optics.hpp"

namespace proxzone::io {

// camera_id=..., focal_length_px=..., assumed_subject_extent_m=... one per line.
std::string format_profile(const CalibrationProfile& profile);

// Missing assumed_subject_extent_m falls back to default_extent_m; a missing
// focal_length_px or unknown key is a ValidationError.
CalibrationProfile parse_profile(std::string_view text, std::string_view source,
                                 double default_extent_m = kDefaultSubjectExtentM);

CalibrationProfile load_profile(const std::filesystem::path& path,
                                double default_extent_m = kDefaultSubjectExtentM);
void save_profile(const std::filesystem::path& path, const CalibrationProfile& profile);

}  // namespace proxzone::io
