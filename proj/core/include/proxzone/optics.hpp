#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace proxzone {

// 5'4" expressed in meters.
inline constexpr double kDefaultSubjectExtentM = 1.6256;
inline constexpr double kMetersPerInch = 0.0254;

// Pinhole camera model used for ranging: focal length in pixels and the
// real-world extent every detected subject is assumed to have.
struct CalibrationProfile {
  double focal_length_px = 0.0;
  double assumed_subject_extent_m = kDefaultSubjectExtentM;
  std::string camera_id = "front";

  bool operator==(const CalibrationProfile&) const = default;
};

// Throws InvalidArgument if focal length or assumed extent is not positive.
void validate(const CalibrationProfile& profile);

// Detector output in pixel space. The vertical extent (height_px) is the
// ranging input; width_px is carried for display only.
struct BoundingBox {
  double x = 0.0;
  double y = 0.0;
  double width_px = 0.0;
  double height_px = 0.0;
  double confidence = 1.0;
  std::string subject_id;

  bool operator==(const BoundingBox&) const = default;
};

void validate(const BoundingBox& box);

struct DetectionFrame {
  std::int64_t timestamp_ms = 0;
  std::vector<BoundingBox> boxes;

  bool operator==(const DetectionFrame&) const = default;
};

// Validates every box and requires subject ids to be unique within the frame.
void validate(const DetectionFrame& frame);

// Focal length from one reference observation:
// a subject of known_extent_m at known_distance_m spans pixel_extent_px.
double calibrate_focal_length(double pixel_extent_px, double known_distance_m,
                              double known_extent_m);

// Triangle similarity: distance = assumed extent * focal length / pixel extent.
double estimate_distance(const CalibrationProfile& profile, double bbox_height_px);

// Inverse of estimate_distance: the real-world extent a box of bbox_height_px
// must have if the subject stands at known_distance_m.
double estimate_subject_extent(double known_distance_m, double bbox_height_px,
                               double focal_length_px);

}  // namespace proxzone
