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

#ifndef SLUMKIT_SYNTH_H_
#define SLUMKIT_SYNTH_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

#include "slumkit/dataset.h"
#include "slumkit/geometry.h"
#include "slumkit/image.h"

namespace slumkit {

// Procedural scene parameters. Ranges are closed.
struct SynthConfig {
  int width = 512;
  int height = 512;
  std::array<int, 2> n_instances = {1, 4};
  std::array<int, 2> vertices_per_instance = {6, 14};
  std::array<double, 2> instance_radius = {20.0, 60.0};
  double texture_contrast = 0.6;
  double growth_factor = 1.0;
  // Dataset-level settings used when writing a corpus.
  int n_scenes = 4;
  int n_pairs = 1;
  Scale scale = Scale::k100m;
  int capture_year = 2018;
  int before_year = 2005;

  // Throws Error(kInvalidConfig).
  void Validate() const;
};

// Missing keys keep their defaults. Throws kParseError / kInvalidConfig.
SynthConfig ParseSynthConfig(std::string_view json_text);

struct SynthScene {
  RgbImage image;
  std::vector<Polygon> polygons;
};

// Star-convex instances on a smooth background, with speckle texture inside
// the instances. Deterministic in (cfg, seed).
SynthScene GenerateScene(const SynthConfig& cfg, uint64_t seed);

// The "after" scene keeps the "before" instances, each scaled about its
// centroid by sqrt(growth_factor) and clipped to the frame.
struct SynthPair {
  SynthScene before;
  SynthScene after;
};
SynthPair GeneratePair(const SynthConfig& cfg, uint64_t seed);

// Renders the image for a given set of instances.
RgbImage RenderScene(const SynthConfig& cfg, uint64_t seed,
                     const std::vector<Polygon>& polygons);

// Mean 3x3 local variance of the gray image inside and outside `mask`.
struct TextureStats {
  double inside = 0.0;
  double outside = 0.0;
};
TextureStats MeasureTexture(const RgbImage& image, const RasterMask& mask);

// Local-variance gap per unit of texture_contrast that generated scenes
// guarantee between instance and background pixels.
inline constexpr double kTextureVarianceThreshold = 100.0;

// Writes a corpus under `out_dir`:
//   dataset.json, images/<id>.png        cfg.n_scenes scenes
//   predictions_gt.json                  ground truth as score-1 detections
//   pairs/before.json, pairs/after.json  cfg.n_pairs temporal pairs, one
//   pairs/images/<id>_{before,after}.png dataset per epoch, shared scene ids
void WriteSynthCorpus(const SynthConfig& cfg, uint64_t seed,
                      const std::filesystem::path& out_dir);

}  // namespace slumkit

#endif  // SLUMKIT_SYNTH_H_
