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

#ifndef SLUMKIT_PIPELINE_H_
#define SLUMKIT_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>

#include "slumkit/geometry.h"
#include "slumkit/transforms.h"

namespace slumkit {

// File-level workflows behind the command-line tool.

// One PNG per annotation, <out_dir>/<scene_id>_<k>.png with k counting the
// scene's annotations from 0. Returns the number of files written.
size_t RasterizeDatasetFile(const std::filesystem::path& dataset_path,
                            const std::filesystem::path& out_dir);

struct AugmentJob {
  std::filesystem::path dataset_path;
  AugmentConfig config;
  uint64_t seed = 0;
  std::filesystem::path out_dir;
  // Letterbox every scene to kModelInputSize before augmenting.
  bool resize_pad = false;
  int jobs = 1;
};

// Writes <out_dir>/images/<scene_id>.png and <out_dir>/dataset.json. Scene i
// uses a seed derived from (seed, i).
void AugmentDatasetFile(const AugmentJob& job);

// Union mask of `scene_id` from either a dataset file (ground truth) or a
// prediction file (detections scoring >= score_floor). The format is chosen
// by the JSON root: object = dataset, array = predictions. `dims` supplies
// the grid for prediction files that hold no detection of the scene; without
// it such a scene raises Error(kUnknownScene).
RasterMask LoadSceneUnion(const std::filesystem::path& path,
                          const std::string& scene_id, double score_floor,
                          std::optional<std::pair<int, int>> dims);

// Per-item seed derived from a run seed.
uint64_t DeriveSeed(uint64_t seed, uint64_t index);

}  // namespace slumkit

#endif  // SLUMKIT_PIPELINE_H_
