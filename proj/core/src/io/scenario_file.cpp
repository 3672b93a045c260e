#include "proxzone/io/scenario_file.hpp"

#include <set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "proxzone/errors.hpp"
#include "proxzone/io/text.hpp"

namespace proxzone::io {

namespace {

using nlohmann::json;

// Walks a JSON document and records every problem instead of stopping at the
// first one.
class Reader {
 public:
  std::vector<std::string> errors;

  const json* object(const json& parent, const std::string& key, const std::string& path,
                     bool required) {
    const json* v = field(parent, key, path, required);
    if (v && !v->is_object()) {
      fail(path, "expected an object");
      return nullptr;
    }
    return v;
  }

  const json* array(const json& parent, const std::string& key, const std::string& path,
                    bool required) {
    const json* v = field(parent, key, path, required);
    if (v && !v->is_array()) {
      fail(path, "expected an array");
      return nullptr;
    }
    return v;
  }

  template <typename T>
  void number(const json& parent, const std::string& key, const std::string& path, T& dst,
              bool required) {
    const json* v = field(parent, key, path, required);
    if (!v) return;
    if constexpr (std::is_integral_v<T>) {
      if (!v->is_number_integer()) return fail(path, "expected an integer");
    } else {
      if (!v->is_number()) return fail(path, "expected a number");
    }
    dst = v->get<T>();
  }

  void string(const json& parent, const std::string& key, const std::string& path,
              std::string& dst, bool required) {
    const json* v = field(parent, key, path, required);
    if (!v) return;
    if (!v->is_string()) return fail(path, "expected a string");
    dst = v->get<std::string>();
  }

  void only_keys(const json& obj, const std::string& path, std::initializer_list<const char*> keys) {
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [k, _] : obj.items()) {
      if (!allowed.count(k)) fail(join(path, k), "unknown field");
    }
  }

  void fail(const std::string& path, std::string_view what) {
    errors.push_back(fmt::format("{}: {}", path.empty() ? "<root>" : path, what));
  }

  static std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }

 private:
  const json* field(const json& parent, const std::string& key, const std::string& path,
                    bool required) {
    const auto it = parent.find(key);
    if (it == parent.end() || it->is_null()) {
      if (required) fail(path, "missing");
      return nullptr;
    }
    return &*it;
  }
};

}  // namespace

Scenario parse_scenario(std::string_view json_text, std::string_view source) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError({fmt::format("{}: invalid JSON: {}", source, e.what())});
  }

  Reader r;
  Scenario s;
  if (!doc.is_object()) {
    r.fail("", "expected an object");
  } else {
    r.only_keys(doc, "", {"camera", "subjects", "markers", "noise", "seed"});

    if (const json* cam = r.object(doc, "camera", "camera", true)) {
      r.only_keys(*cam, "camera",
                  {"camera_id", "focal_length_px", "assumed_subject_extent_m",
                   "true_focal_length_px"});
      r.string(*cam, "camera_id", "camera.camera_id", s.camera.camera_id, false);
      r.number(*cam, "focal_length_px", "camera.focal_length_px", s.camera.focal_length_px, true);
      r.number(*cam, "assumed_subject_extent_m", "camera.assumed_subject_extent_m",
               s.camera.assumed_subject_extent_m, false);
      if (cam->contains("true_focal_length_px") && !(*cam)["true_focal_length_px"].is_null()) {
        double f = 0.0;
        r.number(*cam, "true_focal_length_px", "camera.true_focal_length_px", f, true);
        s.true_focal_length_px = f;
      }
    }

    if (const json* subjects = r.array(doc, "subjects", "subjects", true)) {
      for (std::size_t i = 0; i < subjects->size(); ++i) {
        const json& js = (*subjects)[i];
        const std::string path = fmt::format("subjects[{}]", i);
        if (!js.is_object()) {
          r.fail(path, "expected an object");
          continue;
        }
        r.only_keys(js, path, {"subject_id", "true_height_m", "trajectory"});
        SubjectTrack track;
        r.string(js, "subject_id", path + ".subject_id", track.subject_id, true);
        r.number(js, "true_height_m", path + ".true_height_m", track.true_height_m, false);
        if (const json* traj = r.array(js, "trajectory", path + ".trajectory", true)) {
          for (std::size_t k = 0; k < traj->size(); ++k) {
            const json& jp = (*traj)[k];
            const std::string pp = fmt::format("{}.trajectory[{}]", path, k);
            if (!jp.is_object()) {
              r.fail(pp, "expected an object");
              continue;
            }
            r.only_keys(jp, pp, {"timestamp_ms", "sector", "true_distance_m"});
            TrajectoryPoint p;
            r.number(jp, "timestamp_ms", pp + ".timestamp_ms", p.timestamp_ms, true);
            std::string sector;
            r.string(jp, "sector", pp + ".sector", sector, true);
            if (!sector.empty()) {
              if (const auto sec = parse_sector(sector)) {
                p.sector = *sec;
              } else {
                r.fail(pp + ".sector", fmt::format("unknown sector '{}'", sector));
              }
            }
            r.number(jp, "true_distance_m", pp + ".true_distance_m", p.true_distance_m, true);
            track.trajectory.push_back(p);
          }
        }
        s.subjects.push_back(std::move(track));
      }
    }

    if (const json* markers = r.array(doc, "markers", "markers", false)) {
      for (std::size_t i = 0; i < markers->size(); ++i) {
        const json& jm = (*markers)[i];
        const std::string path = fmt::format("markers[{}]", i);
        if (!jm.is_object()) {
          r.fail(path, "expected an object");
          continue;
        }
        r.only_keys(jm, path, {"label", "distance_m"});
        Marker m;
        r.number(jm, "distance_m", path + ".distance_m", m.distance_m, true);
        m.label = format_decimal(m.distance_m) + " m";
        r.string(jm, "label", path + ".label", m.label, false);
        s.markers.push_back(std::move(m));
      }
    }

    if (const json* noise = r.object(doc, "noise", "noise", false)) {
      r.only_keys(*noise, "noise", {"noise_sigma_px", "noise_sigma_m"});
      r.number(*noise, "noise_sigma_px", "noise.noise_sigma_px", s.noise.noise_sigma_px, false);
      r.number(*noise, "noise_sigma_m", "noise.noise_sigma_m", s.noise.noise_sigma_m, false);
    }

    if (doc.contains("seed") && !doc["seed"].is_null()) {
      if (doc["seed"].is_number_unsigned() ||
          (doc["seed"].is_number_integer() && doc["seed"].get<std::int64_t>() >= 0)) {
        s.seed = doc["seed"].get<std::uint64_t>();
      } else {
        r.fail("seed", "expected a non-negative integer");
      }
    }
  }

  if (r.errors.empty()) {
    for (auto& v : check(s)) r.errors.push_back(std::move(v));
  }
  if (!r.errors.empty()) {
    for (auto& e : r.errors) e = fmt::format("{}: {}", source, e);
    throw ValidationError(std::move(r.errors));
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_file(path), path.string());
}

std::string format_scenario(const Scenario& s) {
  nlohmann::ordered_json doc;
  doc["camera"]["camera_id"] = s.camera.camera_id;
  doc["camera"]["focal_length_px"] = s.camera.focal_length_px;
  doc["camera"]["assumed_subject_extent_m"] = s.camera.assumed_subject_extent_m;
  if (s.true_focal_length_px) doc["camera"]["true_focal_length_px"] = *s.true_focal_length_px;
  doc["subjects"] = nlohmann::ordered_json::array();
  for (const auto& track : s.subjects) {
    nlohmann::ordered_json jt;
    jt["subject_id"] = track.subject_id;
    jt["true_height_m"] = track.true_height_m;
    jt["trajectory"] = nlohmann::ordered_json::array();
    for (const auto& p : track.trajectory) {
      jt["trajectory"].push_back({{"timestamp_ms", p.timestamp_ms},
                                  {"sector", std::string(to_string(p.sector))},
                                  {"true_distance_m", p.true_distance_m}});
    }
    doc["subjects"].push_back(std::move(jt));
  }
  doc["markers"] = nlohmann::ordered_json::array();
  for (const auto& m : s.markers) {
    doc["markers"].push_back({{"label", m.label}, {"distance_m", m.distance_m}});
  }
  doc["noise"]["noise_sigma_px"] = s.noise.noise_sigma_px;
  doc["noise"]["noise_sigma_m"] = s.noise.noise_sigma_m;
  doc["seed"] = s.seed;
  return doc.dump(2) + "\n";
}

}  // namespace proxzone::io
