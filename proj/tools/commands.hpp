#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "proxzone/eval.hpp"
#include "proxzone/io/config.hpp"

namespace proxzone::cli {

// Stable process exit codes.
enum ExitCode : int {
  kOk = 0,
  kPartial = 1,     // some input lines skipped
  kUsage = 2,       // bad arguments
  kValidation = 3,  // malformed input file or stream
  kIo = 4,          // unreadable or unwritable path
};

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

struct CalibrateArgs {
  double pixel_extent_px = 0.0;
  double known_distance_m = 0.0;
  std::optional<double> known_extent_m;  // config default when unset
  std::string camera_id = "front";
  std::filesystem::path out_path;
};

struct EstimateArgs {
  std::filesystem::path profile_path;
  double bbox_height_px = 0.0;
};

enum class LengthUnit { Meters, Centimeters, Inches };

struct HeightArgs {
  double known_distance_m = 0.0;
  double bbox_height_px = 0.0;
  std::optional<double> focal_length_px;
  std::optional<std::filesystem::path> profile_path;
  LengthUnit unit = LengthUnit::Meters;
};

struct SimulateArgs {
  std::filesystem::path scenario_path;
  std::filesystem::path out_dir;
  std::optional<std::uint64_t> seed;
  bool overlays = false;
  bool svg = false;
};

struct EvaluateArgs {
  std::filesystem::path pairs_path;  // "-" reads standard input
  std::optional<std::filesystem::path> csv_out;
  std::optional<Denominator> denominator;  // config default when unset
};

struct ReplayArgs {
  std::filesystem::path profile_path;
  std::optional<std::filesystem::path> detections;
  std::optional<std::filesystem::path> motions;
  std::optional<std::filesystem::path> ranges;
  std::optional<std::filesystem::path> out_path;  // standard output when unset
};

int cmd_calibrate(const CalibrateArgs& args, const io::Config& config, Streams s);
int cmd_estimate(const EstimateArgs& args, const io::Config& config, Streams s);
int cmd_height(const HeightArgs& args, const io::Config& config, Streams s);
int cmd_simulate(const SimulateArgs& args, const io::Config& config, Streams s);
int cmd_classify(const io::Config& config, Streams s);
int cmd_evaluate(const EvaluateArgs& args, const io::Config& config, Streams s);
int cmd_replay(const ReplayArgs& args, const io::Config& config, Streams s);

// Parses a detected/actual CSV. Columns are located by header name
// (detected or detected_m, actual or actual_m, optional label).
// Throws ValidationError for missing columns or bad cells.
std::vector<Measurement> parse_pairs_csv(std::string_view text, std::string_view source);

// Full command line: global --config, then one subcommand.
int run(int argc, const char* const* argv, Streams s);

}  // namespace proxzone::cli
