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

#include "slumkit/geometry.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "slumkit/error.h"

namespace slumkit {
namespace {

struct Edge {
  double y_low;
  double y_high;
  Point a;
  Point b;
};

// Smallest integer index i (clamped to [lo, hi]) with i + 0.5 >= v.
int FirstCenterAtOrAbove(double v, int lo, int hi) {
  double guess = std::clamp(std::ceil(v - 0.5), static_cast<double>(lo),
                            static_cast<double>(hi));
  int i = static_cast<int>(guess);
  while (i > lo && (i - 1) + 0.5 >= v) --i;
  while (i < hi && i + 0.5 < v) ++i;
  return i;
}

// x where the edge crosses the horizontal line y = yc. Callers guarantee the
// edge is not horizontal.
double CrossingX(const Point& a, const Point& b, double yc) {
  return a.x + (yc - a.y) * (b.x - a.x) / (b.y - a.y);
}

std::vector<Point> ClipAgainst(const std::vector<Point>& in, int axis,
                               double bound, bool keep_below) {
  std::vector<Point> out;
  if (in.empty()) return out;
  auto coord = [axis](const Point& p) { return axis == 0 ? p.x : p.y; };
  auto inside = [&](const Point& p) {
    return keep_below ? coord(p) <= bound : coord(p) >= bound;
  };
  auto intersect = [&](const Point& p, const Point& q) {
    double t = (bound - coord(p)) / (coord(q) - coord(p));
    Point r{p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)};
    if (axis == 0) {
      r.x = bound;
    } else {
      r.y = bound;
    }
    return r;
  };
  Point prev = in.back();
  bool prev_in = inside(prev);
  for (const Point& cur : in) {
    bool cur_in = inside(cur);
    if (cur_in) {
      if (!prev_in) out.push_back(intersect(prev, cur));
      out.push_back(cur);
    } else if (prev_in) {
      out.push_back(intersect(prev, cur));
    }
    prev = cur;
    prev_in = cur_in;
  }
  return out;
}

}  // namespace

void ValidatePolygonVertices(std::span<const Point> vertices) {
  if (vertices.size() < 3) {
    throw Error(ErrorCode::kInvalidPolygon,
                "degenerate polygon: " + std::to_string(vertices.size()) +
                    " vertices, need at least 3");
  }
  for (size_t i = 0; i < vertices.size(); ++i) {
    const Point& p = vertices[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw Error(ErrorCode::kInvalidPolygon,
                  "polygon vertex " + std::to_string(i) + " is not finite");
    }
    if (p == vertices[(i + 1) % vertices.size()]) {
      throw Error(ErrorCode::kInvalidPolygon,
                  "degenerate polygon: vertex " + std::to_string(i) +
                      " coincides with its successor");
    }
  }
}

Polygon::Polygon(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  ValidatePolygonVertices(vertices_);
}

double Polygon::SignedArea() const {
  double sum = 0.0;
  for (size_t i = 0, n = vertices_.size(); i < n; ++i) {
    const Point& p = vertices_[i];
    const Point& q = vertices_[(i + 1) % n];
    sum += p.x * q.y - q.x * p.y;
  }
  return 0.5 * sum;
}

double Polygon::Area() const { return std::abs(SignedArea()); }

double Polygon::Perimeter() const {
  double sum = 0.0;
  for (size_t i = 0, n = vertices_.size(); i < n; ++i) {
    const Point& p = vertices_[i];
    const Point& q = vertices_[(i + 1) % n];
    sum += std::hypot(q.x - p.x, q.y - p.y);
  }
  return sum;
}

Point Polygon::Centroid() const {
  const size_t n = vertices_.size();
  double a = SignedArea();
  if (std::abs(a) < 1e-12) {
    Point mean;
    for (const Point& p : vertices_) {
      mean.x += p.x;
      mean.y += p.y;
    }
    return {mean.x / n, mean.y / n};
  }
  double cx = 0.0, cy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const Point& p = vertices_[i];
    const Point& q = vertices_[(i + 1) % n];
    double cross = p.x * q.y - q.x * p.y;
    cx += (p.x + q.x) * cross;
    cy += (p.y + q.y) * cross;
  }
  return {cx / (6.0 * a), cy / (6.0 * a)};
}

RasterMask::RasterMask(int width, int height)
    : RasterMask(width, height, {}) {}

RasterMask::RasterMask(int width, int height, std::vector<uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "mask dimensions must be positive, got " +
                    std::to_string(width) + "x" + std::to_string(height));
  }
  const size_t expected = static_cast<size_t>(width) * height;
  if (bits_.empty()) {
    bits_.assign(expected, 0);
  } else if (bits_.size() != expected) {
    throw Error(ErrorCode::kDimensionMismatch,
                "mask has " + std::to_string(bits_.size()) +
                    " bits, expected " + std::to_string(expected));
  }
  for (auto& b : bits_) b = b ? 1 : 0;
}

void RleMask::Validate() const {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kMalformedRle, "RLE dimensions must be positive");
  }
  if (runs.empty()) {
    throw Error(ErrorCode::kMalformedRle, "RLE has no runs");
  }
  uint64_t total = 0;
  for (size_t i = 0; i < runs.size(); ++i) {
    if (i > 0 && runs[i] == 0) {
      throw Error(ErrorCode::kMalformedRle,
                  "RLE run " + std::to_string(i) + " is empty");
    }
    total += runs[i];
  }
  const uint64_t expected = static_cast<uint64_t>(width) * height;
  if (total != expected) {
    throw Error(ErrorCode::kMalformedRle,
                "RLE runs sum to " + std::to_string(total) + ", expected " +
                    std::to_string(expected));
  }
}

RasterMask RasterizePolygon(std::span<const Point> vertices, int width,
                            int height) {
  ValidatePolygonVertices(vertices);
  RasterMask mask(width, height);

  const size_t n = vertices.size();
  std::vector<Edge> edges;
  edges.reserve(n);
  for (size_t k = 0; k < n; ++k) {
    const Point& a = vertices[k];
    const Point& b = vertices[(k + 1) % n];
    if (a.y == b.y) continue;
    edges.push_back({std::min(a.y, b.y), std::max(a.y, b.y), a, b});
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& l, const Edge& r) { return l.y_low < r.y_low; });

  // Active-edge scanline: an edge is active on row j when
  // y_low <= j + 0.5 < y_high.
  std::vector<const Edge*> active;
  std::vector<double> xs;
  size_t next = 0;
  for (int j = 0; j < height; ++j) {
    const double yc = j + 0.5;
    while (next < edges.size() && edges[next].y_low <= yc) {
      active.push_back(&edges[next]);
      ++next;
    }
    std::erase_if(active, [yc](const Edge* e) { return e->y_high <= yc; });
    if (active.empty()) {
      if (next == edges.size()) break;
      continue;
    }
    xs.clear();
    for (const Edge* e : active) xs.push_back(CrossingX(e->a, e->b, yc));
    std::sort(xs.begin(), xs.end());

    uint8_t* row = mask.mutable_bits().data() + static_cast<size_t>(j) * width;
    for (size_t k = 0; k + 1 < xs.size(); k += 2) {
      int begin = FirstCenterAtOrAbove(xs[k], 0, width);
      int end = FirstCenterAtOrAbove(xs[k + 1], 0, width);
      std::fill(row + begin, row + std::max(begin, end), 1);
    }
  }
  return mask;
}

RasterMask RasterizePolygon(const Polygon& polygon, int width, int height) {
  return RasterizePolygon(std::span<const Point>(polygon.vertices()), width,
                          height);
}

RleMask RleEncode(const RasterMask& mask) {
  RleMask rle{mask.width(), mask.height(), {}};
  uint8_t current = 0;
  uint32_t count = 0;
  for (uint8_t b : mask.bits()) {
    if (b != current) {
      rle.runs.push_back(count);
      count = 0;
      current = b;
    }
    ++count;
  }
  rle.runs.push_back(count);
  return rle;
}

RasterMask RleDecode(const RleMask& rle) {
  rle.Validate();
  std::vector<uint8_t> bits;
  bits.reserve(static_cast<size_t>(rle.width) * rle.height);
  uint8_t value = 0;
  for (uint32_t run : rle.runs) {
    bits.insert(bits.end(), run, value);
    value ^= 1;
  }
  return RasterMask(rle.width, rle.height, std::move(bits));
}

RasterMask CombineMasks(const RasterMask& a, const RasterMask& b,
                        CombineOp op) {
  if (!a.SameShape(b)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "cannot combine " + std::to_string(a.width()) + "x" +
                    std::to_string(a.height()) + " mask with " +
                    std::to_string(b.width()) + "x" +
                    std::to_string(b.height()) + " mask");
  }
  RasterMask out(a.width(), a.height());
  auto pa = a.bits();
  auto pb = b.bits();
  auto po = out.mutable_bits();
  switch (op) {
    case CombineOp::kUnion:
      for (size_t i = 0; i < po.size(); ++i) po[i] = pa[i] | pb[i];
      break;
    case CombineOp::kIntersection:
      for (size_t i = 0; i < po.size(); ++i) po[i] = pa[i] & pb[i];
      break;
    case CombineOp::kDifference:
      for (size_t i = 0; i < po.size(); ++i) po[i] = pa[i] & (pb[i] ^ 1);
      break;
  }
  return out;
}

RasterMask UnionOfMasks(std::span<const RasterMask> masks, int width,
                        int height) {
  RasterMask out(width, height);
  auto po = out.mutable_bits();
  for (const RasterMask& m : masks) {
    if (m.width() != width || m.height() != height) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "union operand has mismatched dimensions");
    }
    auto pm = m.bits();
    for (size_t i = 0; i < po.size(); ++i) po[i] |= pm[i];
  }
  return out;
}

uint64_t MaskArea(const RasterMask& mask) {
  uint64_t area = 0;
  for (uint8_t b : mask.bits()) area += b;
  return area;
}

std::optional<PixelBox> TryBoundingBox(const RasterMask& mask) {
  PixelBox box{mask.width(), mask.height(), -1, -1};
  for (int y = 0; y < mask.height(); ++y) {
    const uint8_t* row = mask.bits().data() + static_cast<size_t>(y) * mask.width();
    for (int x = 0; x < mask.width(); ++x) {
      if (!row[x]) continue;
      box.x_min = std::min(box.x_min, x);
      box.x_max = std::max(box.x_max, x);
      box.y_min = std::min(box.y_min, y);
      box.y_max = std::max(box.y_max, y);
    }
  }
  if (box.x_max < 0) return std::nullopt;
  return box;
}

PixelBox BoundingBox(const RasterMask& mask) {
  auto box = TryBoundingBox(mask);
  if (!box) throw Error(ErrorCode::kEmptyMask, "mask has no set pixels");
  return *box;
}

std::optional<Polygon> ClipPolygonToRect(const Polygon& polygon, double width,
                                         double height) {
  std::vector<Point> pts = polygon.vertices();
  pts = ClipAgainst(pts, 0, 0.0, false);
  pts = ClipAgainst(pts, 0, width, true);
  pts = ClipAgainst(pts, 1, 0.0, false);
  pts = ClipAgainst(pts, 1, height, true);

  std::vector<Point> unique;
  for (const Point& p : pts) {
    if (unique.empty() || !(unique.back() == p)) unique.push_back(p);
  }
  while (unique.size() > 1 && unique.front() == unique.back()) {
    unique.pop_back();
  }
  if (unique.size() < 3) return std::nullopt;
  return Polygon(std::move(unique));
}

Polygon ScalePolygonAbout(const Polygon& polygon, Point center,
                          double factor) {
  std::vector<Point> out;
  out.reserve(polygon.size());
  for (const Point& p : polygon.vertices()) {
    out.push_back({center.x + (p.x - center.x) * factor,
                   center.y + (p.y - center.y) * factor});
  }
  return Polygon(std::move(out));
}

}  // namespace slumkit
