// Copyright 2026 The slumkit Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "slumkit/dataset.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "json.hpp"
#include "slumkit/error.h"

namespace slumkit {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void Invalid(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kValidationError, where + ": " + what);
}

json ParseJson(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

const json& Field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) Invalid(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) Invalid(where, std::string("missing field '") + key + "'");
  return *it;
}

std::string StringField(const json& obj, const char* key,
                        const std::string& where) {
  const json& v = Field(obj, key, where);
  if (!v.is_string()) Invalid(where, std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

int IntField(const json& obj, const char* key, const std::string& where) {
  const json& v = Field(obj, key, where);
  if (!v.is_number_integer()) {
    Invalid(where, std::string("'") + key + "' must be an integer");
  }
  return v.get<int>();
}

double NumberField(const json& obj, const char* key, const std::string& where) {
  const json& v = Field(obj, key, where);
  if (!v.is_number()) Invalid(where, std::string("'") + key + "' must be a number");
  return v.get<double>();
}

Scale ParseScale(const std::string& tag, const std::string& where) {
  if (tag == "100m") return Scale::k100m;
  if (tag == "1000m") return Scale::k1000m;
  Invalid(where, "bad scale tag '" + tag + "' (expected \"100m\" or \"1000m\")");
}

Polygon ParsePolygon(const json& v, const std::string& where) {
  if (!v.is_array()) Invalid(where, "'polygon' must be an array of [x, y]");
  std::vector<Point> pts;
  pts.reserve(v.size());
  for (const json& p : v) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() ||
        !p[1].is_number()) {
      Invalid(where, "polygon vertices must be [x, y] number pairs");
    }
    pts.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  try {
    return Polygon(std::move(pts));
  } catch (const Error& e) {
    Invalid(where, e.what());
  }
}

RleMask ParseRle(const json& v, const std::string& where) {
  RleMask rle;
  rle.width = IntField(v, "width", where);
  rle.height = IntField(v, "height", where);
  const json& runs = Field(v, "runs", where);
  if (!runs.is_array()) Invalid(where, "'runs' must be an array");
  rle.runs.reserve(runs.size());
  for (const json& r : runs) {
    if (!r.is_number_unsigned() || r.get<uint64_t>() > UINT32_MAX) {
      // Negative or fractional run lengths are an RLE defect, not a schema
      // defect.
      throw Error(ErrorCode::kMalformedRle,
                  where + ": run lengths must be non-negative integers");
    }
    rle.runs.push_back(r.get<uint32_t>());
  }
  return rle;
}

Detection ParseDetection(const json& item, const std::string& where) {
  Detection d{StringField(item, "scene_id", where), {}, 0.0, "slum"};
  if (item.contains("category")) d.category = StringField(item, "category", where);
  d.score = NumberField(item, "score", where);
  if (!(d.score >= 0.0 && d.score <= 1.0)) {
    Invalid(where, "score " + std::to_string(d.score) + " outside [0, 1]");
  }
  const std::string rle_where = where + " (scene '" + d.scene_id + "')";
  d.mask = ParseRle(Field(item, "mask", where), rle_where);
  try {
    d.mask.Validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kMalformedRle, rle_where + ": " + e.what());
  }
  return d;
}

const json& PredictionArray(const json& root) {
  if (!root.is_array()) {
    throw Error(ErrorCode::kValidationError,
                "prediction file must be a JSON array");
  }
  return root;
}

}  // namespace

const char* ScaleName(Scale scale) {
  return scale == Scale::k100m ? "100m" : "1000m";
}

const char* SplitName(Split split) {
  return split == Split::kTrain ? "train" : "test";
}

const Scene& Dataset::FindScene(std::string_view id) const {
  int idx = SceneIndex(id);
  if (idx < 0) {
    throw Error(ErrorCode::kUnknownScene,
                "unknown scene '" + std::string(id) + "'");
  }
  return scenes[idx];
}

int Dataset::SceneIndex(std::string_view id) const {
  for (size_t i = 0; i < scenes.size(); ++i) {
    if (scenes[i].id == id) return static_cast<int>(i);
  }
  return -1;
}

void ValidateDataset(const Dataset& ds) {
  std::unordered_set<std::string> ids;
  for (size_t i = 0; i < ds.scenes.size(); ++i) {
    const Scene& s = ds.scenes[i];
    const std::string where = "scene " + std::to_string(i);
    if (s.id.empty()) Invalid(where, "empty id");
    if (!ids.insert(s.id).second) Invalid(where, "duplicate id '" + s.id + "'");
    if (s.width <= 0 || s.height <= 0) {
      Invalid(where, "width and height must be positive");
    }
  }
  for (size_t i = 0; i < ds.annotations.size(); ++i) {
    const InstanceAnnotation& a = ds.annotations[i];
    if (!ids.contains(a.scene_id)) {
      Invalid("annotation " + std::to_string(i),
              "unknown scene_id '" + a.scene_id + "'");
    }
  }
}

Dataset ParseDataset(std::string_view json_text) {
  json root = ParseJson(json_text);
  if (!root.is_object()) {
    throw Error(ErrorCode::kValidationError,
                "dataset file must be a JSON object");
  }
  Dataset ds;

  const json& scenes = Field(root, "scenes", "dataset");
  if (!scenes.is_array()) Invalid("dataset", "'scenes' must be an array");
  for (size_t i = 0; i < scenes.size(); ++i) {
    const json& s = scenes[i];
    const std::string where = "scene " + std::to_string(i);
    Scene scene;
    scene.id = StringField(s, "id", where);
    scene.image_path = StringField(s, "image_path", where);
    scene.width = IntField(s, "width", where);
    scene.height = IntField(s, "height", where);
    scene.scale = ParseScale(StringField(s, "scale", where), where);
    scene.capture_year = IntField(s, "capture_year", where);
    ds.scenes.push_back(std::move(scene));
  }

  const json& anns = Field(root, "annotations", "dataset");
  if (!anns.is_array()) Invalid("dataset", "'annotations' must be an array");
  for (size_t i = 0; i < anns.size(); ++i) {
    const json& a = anns[i];
    const std::string where = "annotation " + std::to_string(i);
    std::string scene_id = StringField(a, "scene_id", where);
    std::string category =
        a.contains("category") ? StringField(a, "category", where) : "slum";
    Polygon poly = ParsePolygon(Field(a, "polygon", where), where);
    ds.annotations.push_back(
        {std::move(scene_id), std::move(poly), std::move(category)});
  }

  if (root.contains("split")) {
    std::string split = StringField(root, "split", "dataset");
    if (split == "train") {
      ds.split = Split::kTrain;
    } else if (split == "test") {
      ds.split = Split::kTest;
    } else {
      Invalid("dataset", "bad split '" + split + "'");
    }
  }
  ValidateDataset(ds);
  return ds;
}

Dataset LoadDataset(const std::filesystem::path& path) {
  return ParseDataset(ReadTextFile(path));
}

std::string SerializeDataset(const Dataset& ds) {
  ordered_json root;
  ordered_json scenes = ordered_json::array();
  for (const Scene& s : ds.scenes) {
    ordered_json j;
    j["id"] = s.id;
    j["image_path"] = s.image_path;
    j["width"] = s.width;
    j["height"] = s.height;
    j["scale"] = ScaleName(s.scale);
    j["capture_year"] = s.capture_year;
    scenes.push_back(std::move(j));
  }
  ordered_json anns = ordered_json::array();
  for (const InstanceAnnotation& a : ds.annotations) {
    ordered_json j;
    j["scene_id"] = a.scene_id;
    j["category"] = a.category;
    ordered_json poly = ordered_json::array();
    for (const Point& p : a.polygon.vertices()) poly.push_back({p.x, p.y});
    j["polygon"] = std::move(poly);
    anns.push_back(std::move(j));
  }
  root["scenes"] = std::move(scenes);
  root["annotations"] = std::move(anns);
  root["split"] = SplitName(ds.split);
  return root.dump(2) + "\n";
}

void SaveDataset(const Dataset& ds, const std::filesystem::path& path) {
  WriteTextFile(path, SerializeDataset(ds));
}

std::vector<Detection> ParsePredictions(std::string_view json_text,
                                        const Dataset& ds) {
  const json root = ParseJson(json_text);
  std::vector<Detection> out;
  const json& items = PredictionArray(root);
  for (size_t i = 0; i < items.size(); ++i) {
    const std::string where = "prediction " + std::to_string(i);
    Detection d = ParseDetection(items[i], where);
    int idx = ds.SceneIndex(d.scene_id);
    if (idx < 0) Invalid(where, "unknown scene_id '" + d.scene_id + "'");
    const Scene& s = ds.scenes[idx];
    if (d.mask.width != s.width || d.mask.height != s.height) {
      Invalid(where, "mask is " + std::to_string(d.mask.width) + "x" +
                         std::to_string(d.mask.height) + " but scene '" +
                         s.id + "' is " + std::to_string(s.width) + "x" +
                         std::to_string(s.height));
    }
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<Detection> LoadPredictions(const std::filesystem::path& path,
                                       const Dataset& ds) {
  return ParsePredictions(ReadTextFile(path), ds);
}

std::vector<Detection> ParsePredictionsUnbound(std::string_view json_text) {
  const json root = ParseJson(json_text);
  std::vector<Detection> out;
  std::unordered_map<std::string, std::pair<int, int>> dims;
  const json& items = PredictionArray(root);
  for (size_t i = 0; i < items.size(); ++i) {
    const std::string where = "prediction " + std::to_string(i);
    Detection d = ParseDetection(items[i], where);
    auto [it, inserted] =
        dims.try_emplace(d.scene_id, d.mask.width, d.mask.height);
    if (!inserted && it->second != std::pair(d.mask.width, d.mask.height)) {
      Invalid(where, "mask dimensions differ from earlier detections of scene '" +
                         d.scene_id + "'");
    }
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<Detection> LoadPredictionsUnbound(
    const std::filesystem::path& path) {
  return ParsePredictionsUnbound(ReadTextFile(path));
}

std::string SerializePredictions(const std::vector<Detection>& detections) {
  ordered_json root = ordered_json::array();
  for (const Detection& d : detections) {
    ordered_json j;
    j["scene_id"] = d.scene_id;
    j["category"] = d.category;
    j["score"] = d.score;
    ordered_json mask;
    mask["width"] = d.mask.width;
    mask["height"] = d.mask.height;
    mask["runs"] = d.mask.runs;
    j["mask"] = std::move(mask);
    root.push_back(std::move(j));
  }
  return root.dump() + "\n";
}

void SavePredictions(const std::vector<Detection>& detections,
                     const std::filesystem::path& path) {
  WriteTextFile(path, SerializePredictions(detections));
}

std::vector<RasterMask> GtMasks(const Dataset& ds, std::string_view scene_id) {
  const Scene& scene = ds.FindScene(scene_id);
  std::vector<RasterMask> masks;
  for (const InstanceAnnotation& a : ds.annotations) {
    if (a.scene_id != scene_id) continue;
    masks.push_back(RasterizePolygon(a.polygon, scene.width, scene.height));
  }
  return masks;
}

std::vector<Detection> GtAsDetections(const Dataset& ds, double score) {
  std::vector<Detection> out;
  for (const InstanceAnnotation& a : ds.annotations) {
    const Scene& s = ds.FindScene(a.scene_id);
    out.push_back({a.scene_id,
                   RleEncode(RasterizePolygon(a.polygon, s.width, s.height)),
                   score, a.category});
  }
  return out;
}

std::filesystem::path ResolveImagePath(
    const std::filesystem::path& dataset_file, const Scene& scene) {
  std::filesystem::path p(scene.image_path);
  if (p.is_absolute()) return p;
  return dataset_file.parent_path() / p;
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIoError, "error reading " + path.string());
  return ss.str();
}

void WriteTextFile(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw Error(ErrorCode::kIoError, "error writing " + path.string());
}

}  // namespace slumkit
