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

#ifndef SLUMKIT_GEOMETRY_H_
#define SLUMKIT_GEOMETRY_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace slumkit {

// A point in image pixel coordinates. Pixel (i, j) covers [i, i+1)x[j, j+1)
// and its center is (i + 0.5, j + 0.5).
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

// Closed polygon ring. The closing edge from the last vertex back to the
// first is implicit. Construction enforces: at least three vertices, finite
// coordinates, no two consecutive vertices (wrap-around included) equal.
class Polygon {
 public:
  explicit Polygon(std::vector<Point> vertices);

  const std::vector<Point>& vertices() const { return vertices_; }
  size_t size() const { return vertices_.size(); }

  // Shoelace sum / 2; the sign follows vertex winding.
  double SignedArea() const;
  double Area() const;
  double Perimeter() const;
  // Area centroid; falls back to the vertex mean for zero-area rings.
  Point Centroid() const;

  friend bool operator==(const Polygon&, const Polygon&) = default;

 private:
  std::vector<Point> vertices_;
};

// Throws Error(kInvalidPolygon) when `vertices` cannot form a Polygon.
void ValidatePolygonVertices(std::span<const Point> vertices);

class RasterMask {
 public:
  // All-zero mask. Throws Error(kInvalidArgument) on a zero dimension.
  RasterMask(int width, int height);
  // Takes ownership of row-major bits (any non-zero byte counts as set).
  RasterMask(int width, int height, std::vector<uint8_t> bits);

  int width() const { return width_; }
  int height() const { return height_; }
  size_t size() const { return bits_.size(); }

  bool Get(int x, int y) const {
    return bits_[static_cast<size_t>(y) * width_ + x] != 0;
  }
  void Set(int x, int y, bool value) {
    bits_[static_cast<size_t>(y) * width_ + x] = value ? 1 : 0;
  }

  // Row-major storage, one byte (0 or 1) per pixel.
  std::span<const uint8_t> bits() const { return bits_; }
  std::span<uint8_t> mutable_bits() { return bits_; }

  bool SameShape(const RasterMask& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const RasterMask&, const RasterMask&) = default;

 private:
  int width_;
  int height_;
  std::vector<uint8_t> bits_;
};

// Run-length encoding in row-major order. Runs alternate 0,1,0,... and always
// start with a (possibly empty) 0-run; no other run may be empty.
struct RleMask {
  int width = 0;
  int height = 0;
  std::vector<uint32_t> runs;

  // Throws Error(kMalformedRle).
  void Validate() const;

  friend bool operator==(const RleMask&, const RleMask&) = default;
};

// Inclusive pixel-index box.
struct PixelBox {
  int x_min = 0;
  int y_min = 0;
  int x_max = 0;
  int y_max = 0;

  friend bool operator==(const PixelBox&, const PixelBox&) = default;
};

enum class CombineOp { kUnion, kIntersection, kDifference };

// Sets pixel (i, j) iff its center lies inside the polygon under the even-odd
// rule. A crossing edge covers the half-open y interval [y_low, y_high), and a
// center exactly on a crossing x counts as being left of it. Parts outside
// the image are discarded.
RasterMask RasterizePolygon(const Polygon& polygon, int width, int height);
// Validating overload for untrusted vertex lists.
RasterMask RasterizePolygon(std::span<const Point> vertices, int width,
                            int height);

RleMask RleEncode(const RasterMask& mask);
RasterMask RleDecode(const RleMask& rle);

// Throws Error(kDimensionMismatch).
RasterMask CombineMasks(const RasterMask& a, const RasterMask& b, CombineOp op);
// Pixel-wise OR of `masks`; an all-zero width x height mask if empty.
RasterMask UnionOfMasks(std::span<const RasterMask> masks, int width,
                        int height);

uint64_t MaskArea(const RasterMask& mask);
// Throws Error(kEmptyMask).
PixelBox BoundingBox(const RasterMask& mask);
std::optional<PixelBox> TryBoundingBox(const RasterMask& mask);

// Intersects a polygon with [0, width] x [0, height]. Returns nullopt when
// fewer than three distinct vertices remain.
std::optional<Polygon> ClipPolygonToRect(const Polygon& polygon, double width,
                                         double height);

// Uniform scale about `center`.
Polygon ScalePolygonAbout(const Polygon& polygon, Point center, double factor);

}  // namespace slumkit

#endif  // SLUMKIT_GEOMETRY_H_
