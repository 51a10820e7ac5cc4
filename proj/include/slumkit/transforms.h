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

#ifndef SLUMKIT_TRANSFORMS_H_
#define SLUMKIT_TRANSFORMS_H_

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "slumkit/geometry.h"
#include "slumkit/image.h"

namespace slumkit {

inline constexpr int kModelInputSize = 1024;

// Rigid augmentation, applied as flip, then rotation about the image center,
// then translation. Positive angles turn clockwise on screen (y points down).
struct GeomTransform {
  bool flip_h = false;
  bool flip_v = false;
  double angle_deg = 0.0;
  double dx = 0.0;
  double dy = 0.0;
};

struct ColorJitter {
  double hue_delta = 0.0;   // degrees, [-180, 180]
  double sat_factor = 1.0;  // > 0
};

struct ResizePadResult {
  RgbImage image;
  double scale_factor = 1.0;
  int content_width = 0;
  int content_height = 0;
  int pad_left = 0;
  int pad_top = 0;
  std::vector<Polygon> polygons;
};

// Resize/pad geometry for a width x height input, without touching pixels.
struct ResizePadPlan {
  double scale_factor;
  int content_width;
  int content_height;
  int pad_left;
  int pad_top;
};
ResizePadPlan PlanResizePad(int width, int height, int target = kModelInputSize);

// Scales the longer side to `target`, keeps the aspect ratio, and centers the
// content on a black canvas (odd padding puts the extra pixel bottom/right).
// Vertices map as v' = v * scale + (pad_left, pad_top).
ResizePadResult ResizePad(const RgbImage& image,
                          const std::vector<Polygon>& polygons,
                          int target = kModelInputSize);

// Forward map of a single point for a width x height frame.
Point TransformPoint(const GeomTransform& t, Point p, int width, int height);
Polygon TransformPolygon(const GeomTransform& t, const Polygon& polygon,
                         int width, int height);
// Inverse-mapped bilinear resampling; sources outside the frame read black.
RgbImage TransformImage(const GeomTransform& t, const RgbImage& image);

struct GeomResult {
  RgbImage image;
  std::vector<Polygon> polygons;
};
GeomResult ApplyGeometric(const RgbImage& image,
                          const std::vector<Polygon>& polygons,
                          const GeomTransform& t);

// Per-pixel HSV hue rotation and saturation scaling; value is kept. Pixels
// with zero saturation are left alone.
RgbImage ApplyColor(const RgbImage& image, const ColorJitter& jitter);

// Closed sampling ranges for random augmentation. A flip flag enables a fair
// coin for that flip. Translation draws dx and dy independently.
struct AugmentConfig {
  bool flip_h = true;
  bool flip_v = true;
  std::array<double, 2> rot_deg = {-15.0, 15.0};
  std::array<double, 2> trans_px = {-64.0, 64.0};
  std::array<double, 2> hue_deg = {-18.0, 18.0};
  std::array<double, 2> sat = {0.8, 1.25};

  // Throws Error(kInvalidConfig).
  void Validate() const;
};

// Missing keys keep their defaults. Throws kParseError / kInvalidConfig.
AugmentConfig ParseAugmentConfig(std::string_view json_text);

struct AugmentParams {
  GeomTransform geom;
  ColorJitter color;
};
AugmentParams SampleAugmentParams(const AugmentConfig& config, uint64_t seed);

struct AugmentResult {
  RgbImage image;
  std::vector<Polygon> polygons;
  AugmentParams params;
};
AugmentResult Augment(const RgbImage& image,
                      const std::vector<Polygon>& polygons,
                      const AugmentConfig& config, uint64_t seed);

}  // namespace slumkit

#endif  // SLUMKIT_TRANSFORMS_H_
