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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "oracle/oracle.h"
#include "slumkit/error.h"

namespace slumkit {
namespace {

RasterMask Block(int w, int h, int x0, int y0, int bw, int bh) {
  RasterMask m(w, h);
  for (int y = y0; y < y0 + bh; ++y) {
    for (int x = x0; x < x0 + bw; ++x) m.Set(x, y, true);
  }
  return m;
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::kInvalidArgument;
}

TEST(PolygonTest, RejectsDegenerateInput) {
  EXPECT_EQ(CodeOf([] { Polygon({{0, 0}, {1, 0}}); }),
            ErrorCode::kInvalidPolygon);
  EXPECT_EQ(CodeOf([] { Polygon({{0, 0}, {1, 0}, {1, 0}, {0, 1}}); }),
            ErrorCode::kInvalidPolygon);
  EXPECT_EQ(CodeOf([] { Polygon({{0, 0}, {1, 0}, {0, 1}, {0, 0}}); }),
            ErrorCode::kInvalidPolygon);
  EXPECT_EQ(CodeOf([] { Polygon({{0, 0}, {NAN, 0}, {0, 1}}); }),
            ErrorCode::kInvalidPolygon);
  EXPECT_EQ(CodeOf([] { Polygon({{0, 0}, {INFINITY, 0}, {0, 1}}); }),
            ErrorCode::kInvalidPolygon);
}

TEST(PolygonTest, AreaPerimeterCentroid) {
  Polygon rect({{0, 0}, {4, 0}, {4, 3}, {0, 3}});
  EXPECT_DOUBLE_EQ(rect.Area(), 12.0);
  EXPECT_DOUBLE_EQ(rect.Perimeter(), 14.0);
  EXPECT_DOUBLE_EQ(rect.Centroid().x, 2.0);
  EXPECT_DOUBLE_EQ(rect.Centroid().y, 1.5);
  Polygon reversed({{0, 3}, {4, 3}, {4, 0}, {0, 0}});
  EXPECT_DOUBLE_EQ(reversed.SignedArea(), -rect.SignedArea());
}

TEST(RasterMaskTest, ValidatesShape) {
  EXPECT_EQ(CodeOf([] { RasterMask(0, 3); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { RasterMask(2, -1); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { RasterMask(2, 2, std::vector<uint8_t>(3, 1)); }),
            ErrorCode::kDimensionMismatch);
}

TEST(RasterizeTest, IntegerRectangle) {
  RasterMask m = RasterizePolygon(Polygon({{0, 0}, {4, 0}, {4, 3}, {0, 3}}),
                                  10, 10);
  EXPECT_EQ(MaskArea(m), 12u);
  EXPECT_EQ(m, Block(10, 10, 0, 0, 4, 3));
  EXPECT_EQ(BoundingBox(m), (PixelBox{0, 0, 3, 2}));
}

TEST(RasterizeTest, TriangleOutsideImageIsEmpty) {
  RasterMask m =
      RasterizePolygon(Polygon({{-5, -5}, {-1, -5}, {-3, -1}}), 8, 8);
  EXPECT_EQ(MaskArea(m), 0u);
}

TEST(RasterizeTest, BowtieMatchesEvenOddBruteForce) {
  const std::vector<Point> bowtie = {{0, 0}, {4, 4}, {4, 0}, {0, 4}};
  RasterMask m = RasterizePolygon(bowtie, 8, 8);
  RasterMask ref = oracle::EvenOddRaster(bowtie, 8, 8);
  EXPECT_EQ(m, ref);
  EXPECT_EQ(MaskArea(m), oracle::CountSet(ref));
  EXPECT_GT(MaskArea(m), 0u);
}

TEST(RasterizeTest, PolygonsCrossingTheBorderAreClipped) {
  RasterMask m = RasterizePolygon(
      Polygon({{-2.0, -2.0}, {3.0, -2.0}, {3.0, 2.0}, {-2.0, 2.0}}), 6, 6);
  EXPECT_EQ(m, Block(6, 6, 0, 0, 3, 2));
  RasterMask big = RasterizePolygon(
      Polygon({{-10, -10}, {20, -10}, {20, 20}, {-10, 20}}), 5, 4);
  EXPECT_EQ(MaskArea(big), 20u);
}

TEST(RasterizeTest, RandomPolygonsMatchBruteForce) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coord(-4.0, 36.0);
  std::uniform_int_distribution<int> nv(3, 9);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Point> pts(nv(rng));
    for (Point& p : pts) p = {coord(rng), coord(rng)};
    // Snap some trials to half-integers to exercise centre-on-edge ties.
    if (trial % 3 == 0) {
      for (Point& p : pts) {
        p = {std::round(p.x * 2) / 2, std::round(p.y * 2) / 2};
      }
    }
    bool degenerate = false;
    for (size_t i = 0; i < pts.size(); ++i) {
      if (pts[i] == pts[(i + 1) % pts.size()]) degenerate = true;
    }
    if (degenerate) continue;
    ASSERT_EQ(RasterizePolygon(pts, 32, 32),
              oracle::EvenOddRaster(pts, 32, 32))
        << "trial " << trial;
  }
}

TEST(RasterizeTest, IntegerRectangleAreasAreExact) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> c(-5, 45);
  for (int trial = 0; trial < 500; ++trial) {
    int x0 = c(rng), x1 = c(rng), y0 = c(rng), y1 = c(rng);
    if (x0 == x1 || y0 == y1) continue;
    if (x0 > x1) std::swap(x0, x1);
    if (y0 > y1) std::swap(y0, y1);
    RasterMask m = RasterizePolygon(
        Polygon({{double(x0), double(y0)}, {double(x1), double(y0)},
                 {double(x1), double(y1)}, {double(x0), double(y1)}}),
        40, 40);
    const int w = std::max(0, std::min(x1, 40) - std::max(x0, 0));
    const int h = std::max(0, std::min(y1, 40) - std::max(y0, 0));
    ASSERT_EQ(MaskArea(m), static_cast<uint64_t>(w) * h);
  }
}

TEST(RasterizeTest, AreaWithinPerimeterOfShoelace) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 3 + static_cast<int>(u(rng) * 10);
    std::vector<double> angles(n);
    for (double& a : angles) a = u(rng) * 2 * std::numbers::pi;
    std::sort(angles.begin(), angles.end());
    const double r = 3 + u(rng) * 25;
    const double cx = 32 + (u(rng) - 0.5) * 10, cy = 32 + (u(rng) - 0.5) * 10;
    std::vector<Point> pts;
    for (double a : angles) {
      Point p{cx + r * std::cos(a), cy + r * std::sin(a)};
      if (pts.empty() || !(pts.back() == p)) pts.push_back(p);
    }
    if (pts.size() < 3 || pts.front() == pts.back()) continue;
    Polygon poly(pts);
    const double raster = static_cast<double>(
        MaskArea(RasterizePolygon(poly, 64, 64)));
    EXPECT_LE(std::abs(raster - poly.Area()), poly.Perimeter() + 4.0)
        << "trial " << trial;
  }
}

TEST(RleTest, CanonicalExamples) {
  EXPECT_EQ(RleEncode(RasterMask(4, 4)).runs, std::vector<uint32_t>({16}));
  RasterMask ones(4, 4, std::vector<uint8_t>(16, 1));
  EXPECT_EQ(RleEncode(ones).runs, std::vector<uint32_t>({0, 16}));
  RasterMask m(3, 2, {0, 1, 1, 0, 0, 1});
  EXPECT_EQ(RleEncode(m).runs, std::vector<uint32_t>({1, 2, 2, 1}));
}

TEST(RleTest, RandomRoundTripAndCanonical) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> dim(1, 40);
  std::uniform_real_distribution<double> density(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    RasterMask m = oracle::RandomMask(dim(rng), dim(rng), density(rng), rng);
    RleMask rle = RleEncode(m);
    ASSERT_NO_THROW(rle.Validate());
    RasterMask back = RleDecode(rle);
    ASSERT_EQ(back, m);
    ASSERT_EQ(RleEncode(back), rle);
    for (size_t k = 1; k < rle.runs.size(); ++k) ASSERT_GT(rle.runs[k], 0u);
  }
}

TEST(RleTest, RejectsMalformedRuns) {
  EXPECT_EQ(CodeOf([] { RleDecode({4, 4, {15}}); }), ErrorCode::kMalformedRle);
  EXPECT_EQ(CodeOf([] { RleDecode({4, 4, {8, 0, 8}}); }),
            ErrorCode::kMalformedRle);
  EXPECT_EQ(CodeOf([] { RleDecode({4, 4, {}}); }), ErrorCode::kMalformedRle);
  EXPECT_EQ(CodeOf([] { RleDecode({0, 4, {0}}); }), ErrorCode::kMalformedRle);
}

TEST(CombineTest, OverlappingBlocks) {
  // 2x2 blocks overlapping in a 1x2 strip.
  RasterMask a = Block(6, 6, 1, 1, 2, 2);
  RasterMask b = Block(6, 6, 2, 1, 2, 2);
  EXPECT_EQ(MaskArea(CombineMasks(a, b, CombineOp::kIntersection)), 2u);
  EXPECT_EQ(MaskArea(CombineMasks(a, b, CombineOp::kUnion)), 6u);
  EXPECT_EQ(MaskArea(CombineMasks(a, b, CombineOp::kDifference)), 2u);
}

TEST(CombineTest, BooleanLaws) {
  std::mt19937_64 rng(9);
  RasterMask empty(12, 9);
  RasterMask full(12, 9, std::vector<uint8_t>(12 * 9, 1));
  for (int i = 0; i < 200; ++i) {
    RasterMask a = oracle::RandomMask(12, 9, 0.4, rng);
    RasterMask b = oracle::RandomMask(12, 9, 0.6, rng);
    EXPECT_EQ(CombineMasks(a, empty, CombineOp::kUnion), a);
    EXPECT_EQ(CombineMasks(a, empty, CombineOp::kIntersection), empty);
    EXPECT_EQ(CombineMasks(a, a, CombineOp::kDifference), empty);
    EXPECT_EQ(CombineMasks(a, b, CombineOp::kUnion),
              CombineMasks(b, a, CombineOp::kUnion));
    EXPECT_EQ(CombineMasks(a, b, CombineOp::kIntersection),
              CombineMasks(b, a, CombineOp::kIntersection));
    RasterMask not_b = CombineMasks(full, b, CombineOp::kDifference);
    EXPECT_EQ(CombineMasks(a, b, CombineOp::kDifference),
              CombineMasks(a, not_b, CombineOp::kIntersection));
  }
}

TEST(CombineTest, DimensionMismatch) {
  EXPECT_EQ(CodeOf([] {
              CombineMasks(RasterMask(3, 3), RasterMask(3, 4),
                           CombineOp::kUnion);
            }),
            ErrorCode::kDimensionMismatch);
}

TEST(MaskAreaTest, Examples) {
  EXPECT_EQ(MaskArea(RasterMask(7, 5)), 0u);
  RasterMask full(1024, 1024, std::vector<uint8_t>(1024 * 1024, 1));
  EXPECT_EQ(MaskArea(full), 1048576u);
}

TEST(BoundingBoxTest, Examples) {
  RasterMask m(10, 10);
  m.Set(3, 7, true);
  EXPECT_EQ(BoundingBox(m), (PixelBox{3, 7, 3, 7}));
  RasterMask two(10, 10);
  two.Set(1, 1, true);
  two.Set(5, 2, true);
  EXPECT_EQ(BoundingBox(two), (PixelBox{1, 1, 5, 2}));
  EXPECT_EQ(CodeOf([] { BoundingBox(RasterMask(4, 4)); }),
            ErrorCode::kEmptyMask);
  EXPECT_FALSE(TryBoundingBox(RasterMask(4, 4)).has_value());
}

TEST(UnionTest, UnionOfMasks) {
  std::vector<RasterMask> masks = {Block(5, 5, 0, 0, 2, 2),
                                   Block(5, 5, 3, 3, 2, 2)};
  EXPECT_EQ(MaskArea(UnionOfMasks(masks, 5, 5)), 8u);
  EXPECT_EQ(MaskArea(UnionOfMasks({}, 5, 5)), 0u);
}

TEST(ClipTest, ClipsToFrame) {
  Polygon p({{-5, 2}, {5, 2}, {5, 6}, {-5, 6}});
  auto clipped = ClipPolygonToRect(p, 10, 10);
  ASSERT_TRUE(clipped.has_value());
  EXPECT_DOUBLE_EQ(clipped->Area(), 20.0);
  EXPECT_FALSE(ClipPolygonToRect(Polygon({{-5, -5}, {-1, -5}, {-3, -1}}), 10,
                                 10)
                   .has_value());
}

TEST(ScaleTest, ScalesAreaBySquare) {
  Polygon p({{10, 10}, {20, 10}, {20, 16}, {10, 16}});
  Polygon s = ScalePolygonAbout(p, p.Centroid(), 2.0);
  EXPECT_DOUBLE_EQ(s.Area(), 4.0 * p.Area());
  EXPECT_DOUBLE_EQ(s.Centroid().x, p.Centroid().x);
  EXPECT_DOUBLE_EQ(s.Centroid().y, p.Centroid().y);
}

}  // namespace
}  // namespace slumkit
