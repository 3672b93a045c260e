#include "proxzone/optics.hpp"

#include <cmath>
#include <set>

#include <fmt/format.h>

#include "proxzone/errors.hpp"

namespace proxzone {

void validate(const CalibrationProfile& profile) {
  require_positive(profile.focal_length_px, "focal_length_px");
  require_positive(profile.assumed_subject_extent_m, "assumed_subject_extent_m");
}

void validate(const BoundingBox& box) {
  require_positive(box.width_px, "width_px");
  require_positive(box.height_px, "height_px");
  if (!(box.confidence >= 0.0 && box.confidence <= 1.0)) {
    throw InvalidArgument(fmt::format("confidence must lie in [0,1] (got {})", box.confidence));
  }
}

void validate(const DetectionFrame& frame) {
  if (frame.timestamp_ms < 0) {
    throw InvalidArgument(fmt::format("timestamp_ms must be >= 0 (got {})", frame.timestamp_ms));
  }
  std::set<std::string> seen;
  for (const auto& box : frame.boxes) {
    validate(box);
    if (!seen.insert(box.subject_id).second) {
      throw InvalidArgument(fmt::format("duplicate subject_id '{}' in frame at t={}",
                                        box.subject_id, frame.timestamp_ms));
    }
  }
}

double calibrate_focal_length(double pixel_extent_px, double known_distance_m,
                              double known_extent_m) {
  require_positive(pixel_extent_px, "pixel_extent_px");
  require_positive(known_distance_m, "known_distance_m");
  require_positive(known_extent_m, "known_extent_m");
  return (pixel_extent_px * known_distance_m) / known_extent_m;
}

double estimate_distance(const CalibrationProfile& profile, double bbox_height_px) {
  validate(profile);
  require_positive(bbox_height_px, "bbox_height_px");
  return (profile.assumed_subject_extent_m * profile.focal_length_px) / bbox_height_px;
}

double estimate_subject_extent(double known_distance_m, double bbox_height_px,
                               double focal_length_px) {
  require_positive(known_distance_m, "known_distance_m");
  require_positive(bbox_height_px, "bbox_height_px");
  require_positive(focal_length_px, "focal_length_px");
  return (known_distance_m * bbox_height_px) / focal_length_px;
}

}  // namespace proxzone
