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

#ifndef SLUMKIT_CHANGE_H_
#define SLUMKIT_CHANGE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slumkit/dataset.h"
#include "slumkit/geometry.h"

namespace slumkit {

enum class ChangeLabel : uint8_t {
  kBackground = 0,
  kStable = 1,
  kAdded = 2,
  kRemoved = 3,
};

enum class ChangeStatus { kChanged, kNoSlumEither, kNewSettlement };
const char* ChangeStatusName(ChangeStatus status);

struct ChangeRaster {
  int width = 0;
  int height = 0;
  std::vector<ChangeLabel> labels;

  uint64_t Count(ChangeLabel label) const;
};

struct ChangeResult {
  uint64_t area_before = 0;
  uint64_t area_after = 0;
  // 100 * (after - before) / before; empty unless status is kChanged.
  std::optional<double> percent_change;
  ChangeStatus status = ChangeStatus::kNoSlumEither;
  ChangeRaster change_map;
};

// Union of the detection masks scoring >= score_floor, on a width x height
// grid. Throws Error(kDimensionMismatch).
RasterMask SceneUnionMask(std::span<const Detection> detections,
                          double score_floor, int width, int height);

// Compares two co-registered union masks. Positive percentages mean growth
// relative to the earlier mask. Throws Error(kDimensionMismatch).
ChangeResult DetectChange(const RasterMask& before, const RasterMask& after);

// {"before_px", "after_px", "percent", "status"}; percent is null when
// undefined.
std::string ChangeResultToJson(const ChangeResult& result);
// "+35.25" style, or "n/a".
std::string FormatPercent(const std::optional<double>& percent);

// Background black, stable gray, added green, removed red.
void WriteChangeMapPng(const ChangeRaster& map, const std::string& path);

}  // namespace slumkit

#endif  // SLUMKIT_CHANGE_H_
