#include "commands.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "proxzone/errors.hpp"
#include "proxzone/fusion.hpp"
#include "proxzone/io/jsonl.hpp"
#include "proxzone/io/profile_file.hpp"
#include "proxzone/io/scenario_file.hpp"
#include "proxzone/io/text.hpp"
#include "proxzone/optics.hpp"
#include "proxzone/sim.hpp"
#include "proxzone/zones.hpp"

namespace proxzone::cli {

namespace {

template <typename Fn>
int guarded(Streams s, Fn&& fn) {
  try {
    return fn();
  } catch (const ValidationError& e) {
    s.err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const OrderingError& e) {
    s.err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const IoError& e) {
    s.err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const InvalidArgument& e) {
    s.err << "usage error: " << e.what() << '\n';
    return kUsage;
  }
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError(dir.string(), ec ? ec.message() : "not a directory");
  }
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::string(io::trim(cell)));
      cell.clear();
    } else {
      cell += c;
    }
  }
  cells.push_back(std::string(io::trim(cell)));
  return cells;
}

double length_in(double meters, LengthUnit unit) {
  switch (unit) {
    case LengthUnit::Meters: return meters;
    case LengthUnit::Centimeters: return meters * 100.0;
    case LengthUnit::Inches: return meters / kMetersPerInch;
  }
  return meters;
}

std::string_view unit_suffix(LengthUnit unit) {
  switch (unit) {
    case LengthUnit::Meters: return "m";
    case LengthUnit::Centimeters: return "cm";
    case LengthUnit::Inches: return "in";
  }
  return "m";
}

}  // namespace

std::vector<Measurement> parse_pairs_csv(std::string_view text, std::string_view source) {
  std::vector<Measurement> out;
  std::vector<std::string> header;
  int line_no = 0;
  int detected_col = -1;
  int actual_col = -1;
  int label_col = -1;
  std::vector<std::string> errors;

  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (io::trim(line).empty()) continue;
    const auto cells = split_csv_line(line);
    if (header.empty()) {
      header = cells;
      for (int i = 0; i < static_cast<int>(cells.size()); ++i) {
        const std::string& h = cells[i];
        if (h == "detected" || h == "detected_m") detected_col = i;
        if (h == "actual" || h == "actual_m") actual_col = i;
        if (h == "label") label_col = i;
      }
      if (detected_col < 0) errors.push_back(fmt::format("{}:1: missing column 'detected'", source));
      if (actual_col < 0) errors.push_back(fmt::format("{}:1: missing column 'actual'", source));
      if (!errors.empty()) throw ValidationError(std::move(errors));
      continue;
    }

    const auto cell = [&](int col) -> std::string {
      return col < static_cast<int>(cells.size()) ? cells[col] : std::string{};
    };
    const auto detected = io::parse_decimal(cell(detected_col));
    const auto actual = io::parse_decimal(cell(actual_col));
    if (!detected || !(*detected > 0.0) || !std::isfinite(*detected)) {
      errors.push_back(fmt::format("{}:{}: detected: expected a positive decimal, got '{}'",
                                   source, line_no, cell(detected_col)));
    }
    if (!actual || !(*actual > 0.0) || !std::isfinite(*actual)) {
      errors.push_back(fmt::format("{}:{}: actual: expected a positive decimal, got '{}'",
                                   source, line_no, cell(actual_col)));
    }
    if (detected && actual) {
      std::string label = label_col >= 0 ? cell(label_col) : fmt::format("row {}", out.size() + 1);
      out.push_back({std::move(label), *detected, *actual});
    }
  }
  if (!errors.empty()) throw ValidationError(std::move(errors));
  return out;
}

int cmd_calibrate(const CalibrateArgs& args, const io::Config& config, Streams s) {
  return guarded(s, [&] {
    CalibrationProfile profile;
    profile.camera_id = args.camera_id;
    profile.assumed_subject_extent_m = args.known_extent_m.value_or(config.assumed_subject_extent_m);
    profile.focal_length_px = calibrate_focal_length(args.pixel_extent_px, args.known_distance_m,
                                                     profile.assumed_subject_extent_m);
    io::save_profile(args.out_path, profile);
    s.out << "focal_length_px=" << io::format_decimal(profile.focal_length_px) << '\n';
    return kOk;
  });
}

int cmd_estimate(const EstimateArgs& args, const io::Config& config, Streams s) {
  return guarded(s, [&] {
    const CalibrationProfile profile =
        io::load_profile(args.profile_path, config.assumed_subject_extent_m);
    const double d = estimate_distance(profile, args.bbox_height_px);
    const Classification c = config.classifier().classify(d);
    s.out << fmt::format("{:.4f}\t{}\t{}\n", d, display_name(c.tag), c.color.name);
    return kOk;
  });
}

int cmd_height(const HeightArgs& args, const io::Config& config, Streams s) {
  return guarded(s, [&] {
    double focal = 0.0;
    if (args.focal_length_px) {
      focal = *args.focal_length_px;
    } else if (args.profile_path) {
      focal = io::load_profile(*args.profile_path, config.assumed_subject_extent_m).focal_length_px;
    } else {
      throw InvalidArgument("one of --focal-length or --profile is required");
    }
    const double extent_m =
        estimate_subject_extent(args.known_distance_m, args.bbox_height_px, focal);
    s.out << fmt::format("{:.2f} {}\n", length_in(extent_m, args.unit), unit_suffix(args.unit));
    return kOk;
  });
}

int cmd_simulate(const SimulateArgs& args, const io::Config& config, Streams s) {
  return guarded(s, [&] {
    Scenario scenario = io::load_scenario(args.scenario_path);
    if (args.seed) scenario.seed = *args.seed;

    SimulationOptions options;
    options.fusion = config.fusion();
    options.record_overlays = args.overlays || args.svg;
    const SimulationLog log = run_scenario(scenario, options);

    ensure_directory(args.out_dir);

    std::string events;
    std::string truth;
    for (const auto& e : log.entries) {
      if (e.assessment) events += io::event_line(*e.assessment) + "\n";
      truth += io::ground_truth_line(e) + "\n";
    }
    io::write_file(args.out_dir / "events.jsonl", events);
    io::write_file(args.out_dir / "ground_truth.jsonl", truth);

    const io::InputStreams streams = io::format_inputs(log.events);
    io::write_file(args.out_dir / "detections.jsonl", streams.detections);
    io::write_file(args.out_dir / "motions.jsonl", streams.motions);
    io::write_file(args.out_dir / "ranges.jsonl", streams.ranges);
    io::save_profile(args.out_dir / "profile.txt", scenario.camera);

    if (options.record_overlays) {
      std::string overlays;
      for (const auto& f : log.overlays) overlays += io::overlay_line(f) + "\n";
      io::write_file(args.out_dir / "overlays.jsonl", overlays);
    }
    if (args.svg) {
      const auto svg_dir = args.out_dir / "svg";
      ensure_directory(svg_dir);
      for (std::size_t i = 0; i < log.overlays.size(); ++i) {
        io::write_file(svg_dir / fmt::format("frame_{:04d}_t{}.svg", i, log.overlays[i].timestamp_ms),
                       render_overlay_svg(log.overlays[i]));
      }
    }

    const auto pairs = measurements_from(log);
    const PercentErrorReport report = summarize(pairs, config.denominator);
    const std::string table = render_table(report);
    io::write_file(args.out_dir / "report.txt", table);
    io::write_file(args.out_dir / "report.csv", render_csv(report));

    s.out << fmt::format("seed {} ({}), {} events, {} assessments, {} dropped readings\n",
                         scenario.seed, Rng::kAlgorithm, log.events.size(), log.assessments().size(),
                         log.dropped_readings);
    s.out << table;
    return kOk;
  });
}

int cmd_classify(const io::Config& config, Streams s) {
  return guarded(s, [&] {
    const ZoneClassifier classifier = config.classifier();
    bool skipped = false;
    int line_no = 0;
    std::string line;
    while (std::getline(s.in, line)) {
      ++line_no;
      const std::string_view token = io::trim(line);
      if (token.empty()) continue;
      const auto d = io::parse_decimal(token);
      if (!d || !std::isfinite(*d) || *d <= 0.0) {
        s.err << fmt::format("stdin:{}: skipped '{}': expected a positive decimal distance\n",
                             line_no, token);
        skipped = true;
        continue;
      }
      const Classification c = classifier.classify(*d);
      s.out << token << '\t' << display_name(c.tag) << '\t' << c.color.name << '\n';
    }
    return skipped ? kPartial : kOk;
  });
}

int cmd_evaluate(const EvaluateArgs& args, const io::Config& config, Streams s) {
  return guarded(s, [&] {
    std::string text;
    std::string source = args.pairs_path.string();
    if (args.pairs_path == "-") {
      std::ostringstream ss;
      ss << s.in.rdbuf();
      text = ss.str();
      source = "stdin";
    } else {
      text = io::read_file(args.pairs_path);
    }
    const auto pairs = parse_pairs_csv(text, source);
    const PercentErrorReport report = summarize(pairs, args.denominator.value_or(config.denominator));
    s.out << render_table(report);
    if (args.csv_out) io::write_file(*args.csv_out, render_csv(report));
    return kOk;
  });
}

int cmd_replay(const ReplayArgs& args, const io::Config& config, Streams s) {
  return guarded(s, [&] {
    const CalibrationProfile profile =
        io::load_profile(args.profile_path, config.assumed_subject_extent_m);

    std::vector<SensorEvent> events;
    const auto open = [](const std::filesystem::path& p) {
      std::ifstream in(p, std::ios::binary);
      if (!in) throw IoError(p.string(), "cannot open for reading");
      return in;
    };
    if (args.detections) {
      auto in = open(*args.detections);
      for (auto& f : io::read_detections(in, args.detections->string())) events.push_back(std::move(f));
    }
    if (args.motions) {
      auto in = open(*args.motions);
      for (auto& m : io::read_motions(in, args.motions->string())) events.push_back(m);
    }
    if (args.ranges) {
      auto in = open(*args.ranges);
      for (auto& r : io::read_ranges(in, args.ranges->string())) events.push_back(r);
    }

    FusionEngine engine(config.fusion());
    const std::size_t n_events = events.size();
    const auto assessments = replay(std::move(events), engine, profile);

    std::ostringstream lines;
    io::write_events(lines, assessments);
    if (args.out_path) {
      io::write_file(*args.out_path, lines.str());
    } else {
      s.out << lines.str();
    }
    s.err << fmt::format("replayed {} events, {} assessments, {} dropped readings\n", n_events,
                         assessments.size(), engine.dropped_readings());
    return kOk;
  });
}

int run(int argc, const char* const* argv, Streams s) {
  CLI::App app{"Monocular ranging, proximity zones and motion-gated ultrasonic fusion"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::optional<std::string> config_path;
  app.add_option("--config", config_path, "Config file (key=value); overrides $PROXZONE_CONFIG");

  CalibrateArgs cal;
  auto* calibrate = app.add_subcommand("calibrate", "Compute a focal length from a reference shot");
  calibrate->add_option("--pixel-extent", cal.pixel_extent_px, "Box height in pixels")->required();
  calibrate->add_option("--known-distance", cal.known_distance_m, "Distance to subject (m)")->required();
  calibrate->add_option("--known-extent", cal.known_extent_m, "Subject height (m)");
  calibrate->add_option("--camera-id", cal.camera_id, "Profile label");
  calibrate->add_option("--out", cal.out_path, "Profile file to write")->required();

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "Distance and zone for one box height");
  estimate->add_option("--profile", est.profile_path, "Calibration profile")->required();
  estimate->add_option("--bbox-height", est.bbox_height_px, "Box height in pixels")->required();

  HeightArgs hgt;
  std::string unit = "m";
  auto* height = app.add_subcommand("height", "Subject height from a box at a known distance");
  height->add_option("--distance", hgt.known_distance_m, "Distance to subject (m)")->required();
  height->add_option("--bbox-height", hgt.bbox_height_px, "Box height in pixels")->required();
  auto* focal_opt = height->add_option("--focal-length", hgt.focal_length_px, "Focal length (px)");
  height->add_option("--profile", hgt.profile_path, "Calibration profile")->excludes(focal_opt);
  height->add_option("--unit", unit, "Output unit")->check(CLI::IsMember({"m", "cm", "in"}));

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run a scenario file through the pipeline");
  simulate->add_option("scenario", sim.scenario_path, "Scenario JSON")->required();
  simulate->add_option("--out-dir", sim.out_dir, "Output directory")->required();
  simulate->add_option("--seed", sim.seed, "Override the scenario seed");
  simulate->add_flag("--overlays", sim.overlays, "Also write overlays.jsonl");
  simulate->add_flag("--svg", sim.svg, "Also write one SVG zone diagram per event");

  auto* classify = app.add_subcommand("classify", "Classify distances read from standard input");

  EvaluateArgs ev;
  std::optional<std::string> denominator;
  auto* evaluate = app.add_subcommand("evaluate", "Percent-error report for detected/actual pairs");
  evaluate->add_option("pairs", ev.pairs_path, "CSV with detected,actual columns ('-' = stdin)")
      ->required();
  evaluate->add_option("--csv-out", ev.csv_out, "Also write the report as CSV");
  evaluate->add_option("--denominator", denominator, "detected (default) or actual")
      ->check(CLI::IsMember({"detected", "actual"}));

  ReplayArgs rep;
  auto* replay_cmd = app.add_subcommand("replay", "Fuse recorded JSONL streams into events.jsonl");
  replay_cmd->add_option("--profile", rep.profile_path, "Calibration profile")->required();
  replay_cmd->add_option("--detections", rep.detections, "detections.jsonl");
  replay_cmd->add_option("--motions", rep.motions, "motions.jsonl");
  replay_cmd->add_option("--ranges", rep.ranges, "ranges.jsonl");
  replay_cmd->add_option("--out", rep.out_path, "events.jsonl to write (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, s.out, s.err);
    return code == 0 ? kOk : kUsage;
  }

  io::Config config;
  {
    std::optional<std::filesystem::path> path;
    if (config_path) {
      path = *config_path;
    } else if (const char* env = std::getenv(io::kConfigEnvVar); env && *env) {
      path = env;
    }
    if (path) {
      const int rc = guarded(s, [&] {
        config = io::load_config(*path);
        return kOk;
      });
      if (rc != kOk) return rc;
    }
  }

  if (*calibrate) return cmd_calibrate(cal, config, s);
  if (*estimate) return cmd_estimate(est, config, s);
  if (*height) {
    hgt.unit = unit == "in" ? LengthUnit::Inches
               : unit == "cm" ? LengthUnit::Centimeters
                              : LengthUnit::Meters;
    return cmd_height(hgt, config, s);
  }
  if (*simulate) return cmd_simulate(sim, config, s);
  if (*classify) return cmd_classify(config, s);
  if (*evaluate) {
    if (denominator) ev.denominator = parse_denominator(*denominator);
    return cmd_evaluate(ev, config, s);
  }
  if (*replay_cmd) return cmd_replay(rep, config, s);
  return kUsage;
}

}  // namespace proxzone::cli
