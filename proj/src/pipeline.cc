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

#include "slumkit/pipeline.h"

#include <cctype>
#include <string>
#include <vector>

#include "internal.h"
#include "slumkit/change.h"
#include "slumkit/dataset.h"
#include "slumkit/error.h"
#include "slumkit/image.h"

namespace slumkit {
namespace {

void MakeDirs(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIoError,
                "cannot create " + dir.string() + ": " + ec.message());
  }
}

}  // namespace

uint64_t DeriveSeed(uint64_t seed, uint64_t index) {
  return internal::MixSeed(seed, index);
}

size_t RasterizeDatasetFile(const std::filesystem::path& dataset_path,
                            const std::filesystem::path& out_dir) {
  const Dataset ds = LoadDataset(dataset_path);
  MakeDirs(out_dir);
  size_t written = 0;
  for (const Scene& scene : ds.scenes) {
    std::vector<RasterMask> masks = GtMasks(ds, scene.id);
    for (size_t k = 0; k < masks.size(); ++k) {
      const auto path = out_dir / (scene.id + "_" + std::to_string(k) + ".png");
      WriteMaskPng(masks[k], path.string());
      ++written;
    }
  }
  return written;
}

void AugmentDatasetFile(const AugmentJob& job) {
  job.config.Validate();
  const Dataset ds = LoadDataset(job.dataset_path);
  MakeDirs(job.out_dir / "images");

  Dataset out;
  out.split = ds.split;
  out.scenes.resize(ds.scenes.size());
  std::vector<std::vector<Polygon>> out_polys(ds.scenes.size());

  internal::ParallelFor(ds.scenes.size(), job.jobs, [&](size_t i) {
    const Scene& scene = ds.scenes[i];
    RgbImage image = ReadPng(ResolveImagePath(job.dataset_path, scene).string());
    if (image.width() != scene.width || image.height() != scene.height) {
      throw Error(ErrorCode::kImageLoadError,
                  "image of scene '" + scene.id + "' is " +
                      std::to_string(image.width()) + "x" +
                      std::to_string(image.height()) + ", dataset says " +
                      std::to_string(scene.width) + "x" +
                      std::to_string(scene.height));
    }
    std::vector<Polygon> polys;
    for (const InstanceAnnotation& a : ds.annotations) {
      if (a.scene_id == scene.id) polys.push_back(a.polygon);
    }
    if (job.resize_pad) {
      ResizePadResult rp = ResizePad(image, polys);
      image = std::move(rp.image);
      polys = std::move(rp.polygons);
    }
    AugmentResult aug =
        Augment(image, polys, job.config, DeriveSeed(job.seed, i));

    const std::string rel = "images/" + scene.id + ".png";
    WritePng(aug.image, (job.out_dir / rel).string());
    Scene s = scene;
    s.image_path = rel;
    s.width = aug.image.width();
    s.height = aug.image.height();
    out.scenes[i] = std::move(s);
    out_polys[i] = std::move(aug.polygons);
  });

  for (size_t i = 0; i < out.scenes.size(); ++i) {
    for (Polygon& p : out_polys[i]) {
      out.annotations.push_back({out.scenes[i].id, std::move(p), "slum"});
    }
  }
  SaveDataset(out, job.out_dir / "dataset.json");
}

RasterMask LoadSceneUnion(const std::filesystem::path& path,
                          const std::string& scene_id, double score_floor,
                          std::optional<std::pair<int, int>> dims) {
  const std::string text = ReadTextFile(path);
  size_t first = 0;
  while (first < text.size() &&
         std::isspace(static_cast<unsigned char>(text[first]))) {
    ++first;
  }
  if (first < text.size() && text[first] == '{') {
    const Dataset ds = ParseDataset(text);
    const Scene& scene = ds.FindScene(scene_id);
    std::vector<RasterMask> masks = GtMasks(ds, scene_id);
    return UnionOfMasks(masks, scene.width, scene.height);
  }

  std::vector<Detection> dets = ParsePredictionsUnbound(text);
  std::erase_if(dets, [&](const Detection& d) { return d.scene_id != scene_id; });
  if (!dets.empty()) {
    dims = std::pair(dets.front().mask.width, dets.front().mask.height);
  }
  if (!dims) {
    throw Error(ErrorCode::kUnknownScene,
                "no detections for scene '" + scene_id + "' in " +
                    path.string() + " and no grid size to fall back on");
  }
  return SceneUnionMask(dets, score_floor, dims->first, dims->second);
}

}  // namespace slumkit
