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

#ifndef SLUMKIT_DATASET_H_
#define SLUMKIT_DATASET_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "slumkit/geometry.h"

namespace slumkit {

// Viewing scale of a capture.
enum class Scale { k100m, k1000m };
enum class Split { kTrain, kTest };

const char* ScaleName(Scale scale);
const char* SplitName(Split split);

struct Scene {
  std::string id;
  std::string image_path;
  int width = 1280;
  int height = 720;
  Scale scale = Scale::k100m;
  int capture_year = 2018;

  friend bool operator==(const Scene&, const Scene&) = default;
};

struct InstanceAnnotation {
  std::string scene_id;
  Polygon polygon;
  std::string category = "slum";

  friend bool operator==(const InstanceAnnotation&,
                         const InstanceAnnotation&) = default;
};

// A scored instance mask produced by an external segmentation model.
struct Detection {
  std::string scene_id;
  RleMask mask;
  double score = 0.0;
  std::string category = "slum";

  friend bool operator==(const Detection&, const Detection&) = default;
};

struct Dataset {
  std::vector<Scene> scenes;
  std::vector<InstanceAnnotation> annotations;
  Split split = Split::kTest;

  // Throws Error(kUnknownScene).
  const Scene& FindScene(std::string_view id) const;
  // Index into `scenes`, or -1.
  int SceneIndex(std::string_view id) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

// Checks every Dataset invariant. Throws Error(kValidationError) naming the
// offending item.
void ValidateDataset(const Dataset& ds);

// Throws Error(kParseError) for malformed JSON and Error(kValidationError)
// for well-formed JSON that violates the schema or an invariant.
Dataset ParseDataset(std::string_view json_text);
// As ParseDataset; additionally Error(kIoError) when `path` is unreadable.
Dataset LoadDataset(const std::filesystem::path& path);
std::string SerializeDataset(const Dataset& ds);
void SaveDataset(const Dataset& ds, const std::filesystem::path& path);

// Validates each detection against `ds`: known scene, score in [0, 1], mask
// dimensions equal to the scene's. A malformed RLE raises kMalformedRle with
// the scene id in the message.
std::vector<Detection> ParsePredictions(std::string_view json_text,
                                        const Dataset& ds);
std::vector<Detection> LoadPredictions(const std::filesystem::path& path,
                                       const Dataset& ds);
// Validation without a dataset: scores, RLE well-formedness, and consistent
// dimensions among detections of the same scene.
std::vector<Detection> ParsePredictionsUnbound(std::string_view json_text);
std::vector<Detection> LoadPredictionsUnbound(
    const std::filesystem::path& path);
std::string SerializePredictions(const std::vector<Detection>& detections);
void SavePredictions(const std::vector<Detection>& detections,
                     const std::filesystem::path& path);

// One rasterized mask per annotation of `scene_id`, in annotation order.
// Throws Error(kUnknownScene).
std::vector<RasterMask> GtMasks(const Dataset& ds, std::string_view scene_id);

// Ground truth rendered as detections with a fixed score.
std::vector<Detection> GtAsDetections(const Dataset& ds, double score);

// Image path of `scene`, resolved against the directory holding the dataset
// file when relative.
std::filesystem::path ResolveImagePath(
    const std::filesystem::path& dataset_file, const Scene& scene);

// Whole-file read. Throws Error(kIoError).
std::string ReadTextFile(const std::filesystem::path& path);
// Throws Error(kIoError).
void WriteTextFile(const std::filesystem::path& path, std::string_view text);

}  // namespace slumkit

#endif  // SLUMKIT_DATASET_H_
