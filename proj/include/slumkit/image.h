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

#ifndef SLUMKIT_IMAGE_H_
#define SLUMKIT_IMAGE_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "slumkit/geometry.h"

namespace slumkit {

// 8-bit interleaved RGB image, row-major.
class RgbImage {
 public:
  RgbImage(int width, int height);
  RgbImage(int width, int height, std::vector<uint8_t> pixels);

  int width() const { return width_; }
  int height() const { return height_; }

  const uint8_t* At(int x, int y) const {
    return &pixels_[(static_cast<size_t>(y) * width_ + x) * 3];
  }
  uint8_t* At(int x, int y) {
    return &pixels_[(static_cast<size_t>(y) * width_ + x) * 3];
  }

  std::span<const uint8_t> pixels() const { return pixels_; }
  std::span<uint8_t> mutable_pixels() { return pixels_; }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

 private:
  int width_;
  int height_;
  std::vector<uint8_t> pixels_;
};

// Throws Error(kImageLoadError) on missing/corrupt files. Grayscale, palette
// and alpha inputs are converted to RGB.
RgbImage ReadPng(const std::string& path);
// Throws Error(kIoError).
void WritePng(const RgbImage& image, const std::string& path);
// Binary mask as an 8-bit grayscale PNG (0 / 255).
void WriteMaskPng(const RasterMask& mask, const std::string& path);
RasterMask ReadMaskPng(const std::string& path);

// Indexed-color PNG: `indices` holds one palette index per pixel.
void WritePalettePng(int width, int height, std::span<const uint8_t> indices,
                     std::span<const std::array<uint8_t, 3>> palette,
                     const std::string& path);

}  // namespace slumkit

#endif  // SLUMKIT_IMAGE_H_
