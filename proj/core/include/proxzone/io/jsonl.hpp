#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "proxzone/fusion.hpp"
#include "proxzone/sim.hpp"
#include "proxzone/zones.hpp"

// Line-delimited JSON streams, one object per '\n'-terminated line.
//
//   detections  {"t_ms":int,"subject_id":str,"bbox":{"x":..,"y":..,"w":..,"h":..},"confidence":float}
//   motions     {"t_ms":int,"sector":"left"|"right"|"back"}
//   ranges      {"t_ms":int,"sector":..,"distance_m":float|null}   null = out of range
//   events      {"t_ms":int,"sector":..,"subject_id"?:str,"distance_m"?:float,
//                "tag":"safe"|"warning"|"unsafe","color":str,"out_of_range"?:bool}
//
// Parse failures throw ValidationError with "source:line: field: message".
// Blank lines are ignored.
namespace proxzone::io {

std::string detection_line(std::int64_t t_ms, const BoundingBox& box);
std::string motion_line(const MotionEvent& e);
std::string range_line(const RangeReading& r);
std::string event_line(const ZoneAssessment& a);

// Consecutive lines sharing t_ms form one frame.
std::vector<DetectionFrame> read_detections(std::istream& in, std::string_view source);
std::vector<MotionEvent> read_motions(std::istream& in, std::string_view source);
std::vector<RangeReading> read_ranges(std::istream& in, std::string_view source);
// Colors come back by name with the RGB of the matching scheme entry.
std::vector<ZoneAssessment> read_events(std::istream& in, std::string_view source,
                                        const ColorScheme& colors = {});

void write_events(std::ostream& out, const std::vector<ZoneAssessment>& assessments);

// Splits replay inputs into their three stream files' contents.
struct InputStreams {
  std::string detections;
  std::string motions;
  std::string ranges;
};
InputStreams format_inputs(const std::vector<SensorEvent>& events);

// One line per log entry: ground truth, the event kind and the resulting
// assessment if any.
std::string ground_truth_line(const SimulationEntry& entry);

std::string overlay_line(const OverlayFrame& frame);

}  // namespace proxzone::io
