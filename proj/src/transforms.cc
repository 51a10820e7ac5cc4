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

#include "slumkit/transforms.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "json.hpp"
#include "slumkit/error.h"

namespace slumkit {
namespace {

struct Rotation {
  bool identity = true;
  double c = 1.0;
  double s = 0.0;
};

// Angles that are exact multiples of 90 degrees get exact coefficients so
// that e.g. a full turn is a bit-exact identity.
Rotation MakeRotation(double angle_deg) {
  double a = std::fmod(angle_deg, 360.0);
  if (a < 0) a += 360.0;
  if (a == 0.0) return {};
  if (a == 90.0) return {false, 0.0, 1.0};
  if (a == 180.0) return {false, -1.0, 0.0};
  if (a == 270.0) return {false, 0.0, -1.0};
  const double rad = a * std::numbers::pi / 180.0;
  return {false, std::cos(rad), std::sin(rad)};
}

Point Rotate(const Rotation& r, Point p, double cx, double cy) {
  if (r.identity) return p;
  const double x = p.x - cx;
  const double y = p.y - cy;
  return {cx + r.c * x - r.s * y, cy + r.s * x + r.c * y};
}

Point InverseTransformPoint(const GeomTransform& t, const Rotation& inv_rot,
                            Point q, int width, int height) {
  Point p{q.x - t.dx, q.y - t.dy};
  p = Rotate(inv_rot, p, width / 2.0, height / 2.0);
  if (t.flip_h) p.x = width - p.x;
  if (t.flip_v) p.y = height - p.y;
  return p;
}

// Bilinear sample at continuous pixel coordinates (pixel centers at k + 0.5).
// Neighbors outside the image contribute black.
void SampleBilinear(const RgbImage& img, double px, double py, uint8_t* out) {
  const double u = px - 0.5;
  const double v = py - 0.5;
  const double fx0 = std::floor(u);
  const double fy0 = std::floor(v);
  if (fx0 < -1.0 || fy0 < -1.0 || fx0 >= img.width() || fy0 >= img.height()) {
    out[0] = out[1] = out[2] = 0;
    return;
  }
  const int x0 = static_cast<int>(fx0);
  const int y0 = static_cast<int>(fy0);
  const double ax = u - fx0;
  const double ay = v - fy0;
  double acc[3] = {0.0, 0.0, 0.0};
  const int xs[2] = {x0, x0 + 1};
  const int ys[2] = {y0, y0 + 1};
  const double wx[2] = {1.0 - ax, ax};
  const double wy[2] = {1.0 - ay, ay};
  for (int j = 0; j < 2; ++j) {
    if (ys[j] < 0 || ys[j] >= img.height() || wy[j] == 0.0) continue;
    for (int i = 0; i < 2; ++i) {
      if (xs[i] < 0 || xs[i] >= img.width() || wx[i] == 0.0) continue;
      const uint8_t* px_in = img.At(xs[i], ys[j]);
      const double w = wx[i] * wy[j];
      for (int c = 0; c < 3; ++c) acc[c] += w * px_in[c];
    }
  }
  for (int c = 0; c < 3; ++c) {
    out[c] = static_cast<uint8_t>(std::clamp(std::round(acc[c]), 0.0, 255.0));
  }
}

// Uniform double in [lo, hi] from the top 53 bits of one engine draw.
double UniformIn(std::mt19937_64& rng, const std::array<double, 2>& range) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return range[0] + (range[1] - range[0]) * u;
}

void RgbToHsv(const uint8_t* rgb, double& h, double& s, double& v) {
  const double r = rgb[0] / 255.0;
  const double g = rgb[1] / 255.0;
  const double b = rgb[2] / 255.0;
  const double mx = std::max({r, g, b});
  const double mn = std::min({r, g, b});
  const double delta = mx - mn;
  v = mx;
  s = mx > 0.0 ? delta / mx : 0.0;
  if (delta == 0.0) {
    h = 0.0;
  } else if (mx == r) {
    h = 60.0 * std::fmod((g - b) / delta, 6.0);
  } else if (mx == g) {
    h = 60.0 * ((b - r) / delta + 2.0);
  } else {
    h = 60.0 * ((r - g) / delta + 4.0);
  }
  if (h < 0.0) h += 360.0;
}

void HsvToRgb(double h, double s, double v, uint8_t* rgb) {
  const double c = v * s;
  const double hp = h / 60.0;
  const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(hp) % 6) {
    case 0: r = c; g = x; break;
    case 1: r = x; g = c; break;
    case 2: g = c; b = x; break;
    case 3: g = x; b = c; break;
    case 4: r = x; b = c; break;
    default: r = c; b = x; break;
  }
  const double m = v - c;
  rgb[0] = static_cast<uint8_t>(std::clamp(std::round((r + m) * 255.0), 0.0, 255.0));
  rgb[1] = static_cast<uint8_t>(std::clamp(std::round((g + m) * 255.0), 0.0, 255.0));
  rgb[2] = static_cast<uint8_t>(std::clamp(std::round((b + m) * 255.0), 0.0, 255.0));
}

void CheckRange(const std::array<double, 2>& r, const char* name) {
  if (!std::isfinite(r[0]) || !std::isfinite(r[1])) {
    throw Error(ErrorCode::kInvalidConfig,
                std::string(name) + " range must be finite");
  }
  if (r[0] > r[1]) {
    throw Error(ErrorCode::kInvalidConfig,
                std::string(name) + " range is inverted");
  }
}

}  // namespace

ResizePadPlan PlanResizePad(int width, int height, int target) {
  if (width <= 0 || height <= 0 || target <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "resize_pad needs positive sizes");
  }
  const int long_side = std::max(width, height);
  ResizePadPlan plan;
  plan.scale_factor = static_cast<double>(target) / long_side;
  plan.content_width = static_cast<int>(
      std::lround(static_cast<double>(width) * target / long_side));
  plan.content_height = static_cast<int>(
      std::lround(static_cast<double>(height) * target / long_side));
  plan.pad_left = (target - plan.content_width) / 2;
  plan.pad_top = (target - plan.content_height) / 2;
  return plan;
}

ResizePadResult ResizePad(const RgbImage& image,
                          const std::vector<Polygon>& polygons, int target) {
  const ResizePadPlan plan = PlanResizePad(image.width(), image.height(), target);
  const int long_side = std::max(image.width(), image.height());

  RgbImage out(target, target);
  for (int y = 0; y < plan.content_height; ++y) {
    for (int x = 0; x < plan.content_width; ++x) {
      const double sx = (x + 0.5) * long_side / target;
      const double sy = (y + 0.5) * long_side / target;
      SampleBilinear(image, sx, sy, out.At(x + plan.pad_left, y + plan.pad_top));
    }
  }

  std::vector<Polygon> mapped;
  mapped.reserve(polygons.size());
  for (const Polygon& poly : polygons) {
    std::vector<Point> pts;
    pts.reserve(poly.size());
    for (const Point& p : poly.vertices()) {
      pts.push_back({p.x * target / long_side + plan.pad_left,
                     p.y * target / long_side + plan.pad_top});
    }
    mapped.emplace_back(std::move(pts));
  }
  return {std::move(out),      plan.scale_factor, plan.content_width,
          plan.content_height, plan.pad_left,     plan.pad_top,
          std::move(mapped)};
}

Point TransformPoint(const GeomTransform& t, Point p, int width, int height) {
  if (t.flip_h) p.x = width - p.x;
  if (t.flip_v) p.y = height - p.y;
  p = Rotate(MakeRotation(t.angle_deg), p, width / 2.0, height / 2.0);
  return {p.x + t.dx, p.y + t.dy};
}

Polygon TransformPolygon(const GeomTransform& t, const Polygon& polygon,
                         int width, int height) {
  std::vector<Point> pts;
  pts.reserve(polygon.size());
  for (const Point& p : polygon.vertices()) {
    pts.push_back(TransformPoint(t, p, width, height));
  }
  return Polygon(std::move(pts));
}

RgbImage TransformImage(const GeomTransform& t, const RgbImage& image) {
  const Rotation inv = MakeRotation(-t.angle_deg);
  RgbImage out(image.width(), image.height());
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      Point src = InverseTransformPoint(t, inv, {x + 0.5, y + 0.5},
                                        image.width(), image.height());
      SampleBilinear(image, src.x, src.y, out.At(x, y));
    }
  }
  return out;
}

GeomResult ApplyGeometric(const RgbImage& image,
                          const std::vector<Polygon>& polygons,
                          const GeomTransform& t) {
  std::vector<Polygon> out;
  out.reserve(polygons.size());
  for (const Polygon& p : polygons) {
    out.push_back(TransformPolygon(t, p, image.width(), image.height()));
  }
  return {TransformImage(t, image), std::move(out)};
}

RgbImage ApplyColor(const RgbImage& image, const ColorJitter& jitter) {
  RgbImage out = image;
  if (jitter.hue_delta == 0.0 && jitter.sat_factor == 1.0) return out;
  auto px = out.mutable_pixels();
  for (size_t i = 0; i < px.size(); i += 3) {
    double h, s, v;
    RgbToHsv(&px[i], h, s, v);
    if (s == 0.0) continue;
    h = std::fmod(h + jitter.hue_delta, 360.0);
    if (h < 0.0) h += 360.0;
    s = std::clamp(s * jitter.sat_factor, 0.0, 1.0);
    HsvToRgb(h, s, v, &px[i]);
  }
  return out;
}

void AugmentConfig::Validate() const {
  CheckRange(rot_deg, "rot_deg");
  CheckRange(trans_px, "trans_px");
  CheckRange(hue_deg, "hue_deg");
  CheckRange(sat, "sat");
  if (hue_deg[0] < -180.0 || hue_deg[1] > 180.0) {
    throw Error(ErrorCode::kInvalidConfig, "hue_deg must lie in [-180, 180]");
  }
  if (sat[0] <= 0.0) {
    throw Error(ErrorCode::kInvalidConfig, "sat factors must be positive");
  }
}

AugmentConfig ParseAugmentConfig(std::string_view json_text) {
  using nlohmann::json;
  json root;
  try {
    root = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  if (!root.is_object()) {
    throw Error(ErrorCode::kInvalidConfig, "augment config must be an object");
  }
  AugmentConfig cfg;
  auto read_bool = [&](const char* key, bool& dst) {
    if (!root.contains(key)) return;
    if (!root[key].is_boolean()) {
      throw Error(ErrorCode::kInvalidConfig, std::string(key) + " must be a bool");
    }
    dst = root[key].get<bool>();
  };
  auto read_range = [&](const char* key, std::array<double, 2>& dst) {
    if (!root.contains(key)) return;
    const json& v = root[key];
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
        !v[1].is_number()) {
      throw Error(ErrorCode::kInvalidConfig,
                  std::string(key) + " must be a [lo, hi] pair");
    }
    dst = {v[0].get<double>(), v[1].get<double>()};
  };
  read_bool("flip_h", cfg.flip_h);
  read_bool("flip_v", cfg.flip_v);
  read_range("rot_deg", cfg.rot_deg);
  read_range("trans_px", cfg.trans_px);
  read_range("hue_deg", cfg.hue_deg);
  read_range("sat", cfg.sat);
  cfg.Validate();
  return cfg;
}

AugmentParams SampleAugmentParams(const AugmentConfig& config, uint64_t seed) {
  config.Validate();
  std::mt19937_64 rng(seed);
  // Fixed draw order, unconditional: each parameter owns its stream slot.
  const bool coin_h = (rng() >> 63) != 0;
  const bool coin_v = (rng() >> 63) != 0;
  AugmentParams p;
  p.geom.flip_h = config.flip_h && coin_h;
  p.geom.flip_v = config.flip_v && coin_v;
  p.geom.angle_deg = UniformIn(rng, config.rot_deg);
  p.geom.dx = UniformIn(rng, config.trans_px);
  p.geom.dy = UniformIn(rng, config.trans_px);
  p.color.hue_delta = UniformIn(rng, config.hue_deg);
  p.color.sat_factor = UniformIn(rng, config.sat);
  return p;
}

AugmentResult Augment(const RgbImage& image,
                      const std::vector<Polygon>& polygons,
                      const AugmentConfig& config, uint64_t seed) {
  AugmentParams params = SampleAugmentParams(config, seed);
  GeomResult geom = ApplyGeometric(image, polygons, params.geom);
  return {ApplyColor(geom.image, params.color), std::move(geom.polygons),
          params};
}

}  // namespace slumkit
