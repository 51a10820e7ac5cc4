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

#include "slumkit/change.h"

#include <algorithm>
#include <array>
#include <cstdio>

#include "internal.h"
#include "json.hpp"
#include "slumkit/error.h"
#include "slumkit/image.h"

namespace slumkit {

const char* ChangeStatusName(ChangeStatus status) {
  switch (status) {
    case ChangeStatus::kChanged:
      return "changed";
    case ChangeStatus::kNoSlumEither:
      return "no_slum_either";
    case ChangeStatus::kNewSettlement:
      return "new_settlement";
  }
  return "?";
}

uint64_t ChangeRaster::Count(ChangeLabel label) const {
  return static_cast<uint64_t>(std::count(labels.begin(), labels.end(), label));
}

RasterMask SceneUnionMask(std::span<const Detection> detections,
                          double score_floor, int width, int height) {
  RasterMask out(width, height);
  auto po = out.mutable_bits();
  for (const Detection& d : detections) {
    if (d.mask.width != width || d.mask.height != height) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "detection for scene '" + d.scene_id + "' is " +
                      std::to_string(d.mask.width) + "x" +
                      std::to_string(d.mask.height) + ", expected " +
                      std::to_string(width) + "x" + std::to_string(height));
    }
    if (d.score < score_floor) continue;
    d.mask.Validate();
    // Walk the runs directly instead of materializing a dense mask.
    size_t pos = 0;
    bool on = false;
    for (uint32_t run : d.mask.runs) {
      if (on) std::fill_n(po.begin() + pos, run, 1);
      pos += run;
      on = !on;
    }
  }
  return out;
}

ChangeResult DetectChange(const RasterMask& before, const RasterMask& after) {
  if (!before.SameShape(after)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "before/after masks differ in size");
  }
  ChangeResult r;
  r.change_map.width = before.width();
  r.change_map.height = before.height();
  r.change_map.labels.resize(before.size());
  const auto pb = before.bits();
  const auto pa = after.bits();
  for (size_t i = 0; i < pb.size(); ++i) {
    r.area_before += pb[i];
    r.area_after += pa[i];
    // Two-bit code: bit 0 = after, bit 1 = before.
    static constexpr ChangeLabel kLut[4] = {
        ChangeLabel::kBackground, ChangeLabel::kAdded, ChangeLabel::kRemoved,
        ChangeLabel::kStable};
    r.change_map.labels[i] = kLut[(pb[i] << 1) | pa[i]];
  }
  if (r.area_before == 0) {
    r.status = r.area_after == 0 ? ChangeStatus::kNoSlumEither
                                 : ChangeStatus::kNewSettlement;
  } else {
    r.status = ChangeStatus::kChanged;
    const double diff = static_cast<double>(r.area_after) -
                        static_cast<double>(r.area_before);
    r.percent_change = 100.0 * diff / static_cast<double>(r.area_before);
  }
  return r;
}

std::string ChangeResultToJson(const ChangeResult& result) {
  nlohmann::ordered_json j;
  j["before_px"] = result.area_before;
  j["after_px"] = result.area_after;
  if (result.percent_change) {
    j["percent"] = internal::RoundSig6(*result.percent_change);
  } else {
    j["percent"] = nullptr;
  }
  j["status"] = ChangeStatusName(result.status);
  return j.dump(2) + "\n";
}

std::string FormatPercent(const std::optional<double>& percent) {
  if (!percent) return "n/a";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%+.2f", *percent);
  return buf;
}

void WriteChangeMapPng(const ChangeRaster& map, const std::string& path) {
  static constexpr std::array<std::array<uint8_t, 3>, 4> kPalette = {{
      {0, 0, 0},
      {128, 128, 128},
      {0, 200, 0},
      {220, 0, 0},
  }};
  std::vector<uint8_t> indices(map.labels.size());
  std::transform(map.labels.begin(), map.labels.end(), indices.begin(),
                 [](ChangeLabel l) { return static_cast<uint8_t>(l); });
  WritePalettePng(map.width, map.height, indices, kPalette, path);
}

}  // namespace slumkit
