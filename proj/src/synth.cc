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

#include "slumkit/synth.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>

#include "internal.h"
#include "json.hpp"
#include "slumkit/error.h"

namespace slumkit {
namespace {

constexpr uint64_t kBackgroundStream = 0x9E3779B97F4A7C15ULL;
constexpr uint64_t kTextureStream = 0xD1B54A32D192ED03ULL;
constexpr int kPlacementAttempts = 64;

double Uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

int UniformInt(std::mt19937_64& rng, const std::array<int, 2>& range) {
  const uint64_t span = static_cast<uint64_t>(range[1] - range[0]) + 1;
  return range[0] + static_cast<int>(rng() % span);
}

uint8_t ToByte(double v) {
  return static_cast<uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

void CheckRange(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kInvalidConfig, what);
}

std::string SceneName(const char* prefix, int i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s_%03d", prefix, i);
  return buf;
}

}  // namespace

void SynthConfig::Validate() const {
  CheckRange(width > 0 && height > 0, "width and height must be positive");
  CheckRange(n_instances[0] >= 0 && n_instances[0] <= n_instances[1],
             "n_instances range is empty or negative");
  CheckRange(vertices_per_instance[0] >= 3 &&
                 vertices_per_instance[0] <= vertices_per_instance[1],
             "vertices_per_instance must be a non-empty range starting at >= 3");
  CheckRange(instance_radius[0] > 0.0 &&
                 instance_radius[0] <= instance_radius[1],
             "instance_radius must be a non-empty positive range");
  CheckRange(instance_radius[1] < std::min(width, height) / 2.0,
             "instance_radius must stay below min(width, height) / 2");
  CheckRange(texture_contrast >= 0.0 && texture_contrast <= 1.0,
             "texture_contrast must lie in [0, 1]");
  CheckRange(growth_factor > 0.0 && std::isfinite(growth_factor),
             "growth_factor must be positive");
  CheckRange(n_scenes >= 0 && n_pairs >= 0, "scene counts must be >= 0");
}

SynthConfig ParseSynthConfig(std::string_view json_text) {
  using nlohmann::json;
  json root;
  try {
    root = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  if (!root.is_object()) {
    throw Error(ErrorCode::kInvalidConfig, "synth config must be an object");
  }
  SynthConfig cfg;
  auto fail = [](const char* key, const char* what) {
    throw Error(ErrorCode::kInvalidConfig, std::string(key) + " " + what);
  };
  auto read_int = [&](const char* key, int& dst) {
    if (!root.contains(key)) return;
    if (!root[key].is_number_integer()) fail(key, "must be an integer");
    dst = root[key].get<int>();
  };
  auto read_double = [&](const char* key, double& dst) {
    if (!root.contains(key)) return;
    if (!root[key].is_number()) fail(key, "must be a number");
    dst = root[key].get<double>();
  };
  auto read_int_range = [&](const char* key, std::array<int, 2>& dst) {
    if (!root.contains(key)) return;
    const json& v = root[key];
    if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() ||
        !v[1].is_number_integer()) {
      fail(key, "must be an integer [lo, hi] pair");
    }
    dst = {v[0].get<int>(), v[1].get<int>()};
  };
  auto read_range = [&](const char* key, std::array<double, 2>& dst) {
    if (!root.contains(key)) return;
    const json& v = root[key];
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
        !v[1].is_number()) {
      fail(key, "must be a [lo, hi] pair");
    }
    dst = {v[0].get<double>(), v[1].get<double>()};
  };
  read_int("width", cfg.width);
  read_int("height", cfg.height);
  read_int_range("n_instances", cfg.n_instances);
  read_int_range("vertices_per_instance", cfg.vertices_per_instance);
  read_range("instance_radius", cfg.instance_radius);
  read_double("texture_contrast", cfg.texture_contrast);
  read_double("growth_factor", cfg.growth_factor);
  read_int("n_scenes", cfg.n_scenes);
  read_int("n_pairs", cfg.n_pairs);
  read_int("capture_year", cfg.capture_year);
  read_int("before_year", cfg.before_year);
  if (root.contains("scale")) {
    if (root["scale"] == "100m") {
      cfg.scale = Scale::k100m;
    } else if (root["scale"] == "1000m") {
      cfg.scale = Scale::k1000m;
    } else {
      fail("scale", "must be \"100m\" or \"1000m\"");
    }
  }
  cfg.Validate();
  return cfg;
}

SynthScene GenerateScene(const SynthConfig& cfg, uint64_t seed) {
  cfg.Validate();
  std::mt19937_64 rng(seed);
  const int n = UniformInt(rng, cfg.n_instances);
  const double grow = std::sqrt(std::max(1.0, cfg.growth_factor));

  struct Placed {
    Point center;
    double reach;
  };
  std::vector<Placed> placed;
  std::vector<Polygon> polygons;
  for (int k = 0; k < n; ++k) {
    const double radius =
        Uniform(rng, cfg.instance_radius[0], cfg.instance_radius[1]);
    // Keep room for the grown instance of a temporal pair when possible.
    const double reach = radius * grow + 1.0;
    const double mx = std::min(reach, cfg.width / 2.0);
    const double my = std::min(reach, cfg.height / 2.0);
    Point center;
    for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
      center = {Uniform(rng, mx, cfg.width - mx),
                Uniform(rng, my, cfg.height - my)};
      bool clear = std::all_of(placed.begin(), placed.end(), [&](const Placed& p) {
        return std::hypot(p.center.x - center.x, p.center.y - center.y) >
               p.reach + reach;
      });
      if (clear) break;
    }
    placed.push_back({center, reach});

    // Angles stay within +/-0.2 of evenly spaced slots, so every angular gap
    // is below pi and the center is in the kernel: the ring is simple.
    const int v = UniformInt(rng, cfg.vertices_per_instance);
    const double phase = Uniform(rng, 0.0, 2.0 * std::numbers::pi);
    std::vector<Point> pts;
    pts.reserve(v);
    for (int i = 0; i < v; ++i) {
      const double theta =
          phase + 2.0 * std::numbers::pi * (i + Uniform(rng, -0.2, 0.2)) / v;
      const double r = radius * Uniform(rng, 0.6, 1.0);
      pts.push_back({center.x + r * std::cos(theta),
                     center.y + r * std::sin(theta)});
    }
    polygons.emplace_back(std::move(pts));
  }
  return {RenderScene(cfg, seed, polygons), std::move(polygons)};
}

RgbImage RenderScene(const SynthConfig& cfg, uint64_t seed,
                     const std::vector<Polygon>& polygons) {
  cfg.Validate();
  std::mt19937_64 bg(seed ^ kBackgroundStream);
  std::mt19937_64 tex(seed ^ kTextureStream);

  // Low-frequency background: a few long-wavelength plane waves.
  struct Wave {
    double fx, fy, phase, amp;
  };
  std::vector<Wave> waves;
  for (int i = 0; i < 3; ++i) {
    const double wavelength = Uniform(bg, 0.5, 1.5) * std::max(cfg.width, cfg.height);
    const double dir = Uniform(bg, 0.0, 2.0 * std::numbers::pi);
    waves.push_back({std::cos(dir) / wavelength, std::sin(dir) / wavelength,
                     Uniform(bg, 0.0, 2.0 * std::numbers::pi),
                     Uniform(bg, 6.0, 14.0)});
  }
  const double base[3] = {Uniform(bg, 95.0, 125.0), Uniform(bg, 105.0, 135.0),
                          Uniform(bg, 80.0, 110.0)};

  RasterMask inside(cfg.width, cfg.height);
  for (const Polygon& p : polygons) {
    inside = CombineMasks(inside, RasterizePolygon(p, cfg.width, cfg.height),
                          CombineOp::kUnion);
  }

  const double amp = 80.0 * std::sqrt(cfg.texture_contrast);
  RgbImage img(cfg.width, cfg.height);
  for (int y = 0; y < cfg.height; ++y) {
    for (int x = 0; x < cfg.width; ++x) {
      double shade = 0.0;
      for (const Wave& w : waves) {
        shade += w.amp * std::sin(2.0 * std::numbers::pi * (w.fx * x + w.fy * y) +
                                  w.phase);
      }
      uint8_t* px = img.At(x, y);
      if (inside.Get(x, y)) {
        // Dense-roof speckle: gray noise plus a slight rust tint.
        const double noise = Uniform(tex, -amp, amp);
        px[0] = ToByte(base[0] + shade + noise + 12.0);
        px[1] = ToByte(base[1] + shade + noise - 6.0);
        px[2] = ToByte(base[2] + shade + noise - 4.0);
      } else {
        px[0] = ToByte(base[0] + shade);
        px[1] = ToByte(base[1] + shade);
        px[2] = ToByte(base[2] + shade);
      }
    }
  }
  return img;
}

SynthPair GeneratePair(const SynthConfig& cfg, uint64_t seed) {
  SynthScene before = GenerateScene(cfg, seed);
  const double factor = std::sqrt(cfg.growth_factor);
  std::vector<Polygon> grown;
  for (const Polygon& p : before.polygons) {
    Polygon scaled = ScalePolygonAbout(p, p.Centroid(), factor);
    if (auto clipped = ClipPolygonToRect(scaled, cfg.width, cfg.height)) {
      grown.push_back(std::move(*clipped));
    }
  }
  RgbImage after_img = RenderScene(cfg, seed, grown);
  return {std::move(before), {std::move(after_img), std::move(grown)}};
}

TextureStats MeasureTexture(const RgbImage& image, const RasterMask& mask) {
  const int w = image.width();
  const int h = image.height();
  std::vector<double> gray(static_cast<size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const uint8_t* px = image.At(x, y);
      gray[static_cast<size_t>(y) * w + x] = (px[0] + px[1] + px[2]) / 3.0;
    }
  }
  double sum_in = 0.0, sum_out = 0.0;
  size_t n_in = 0, n_out = 0;
  for (int y = 1; y + 1 < h; ++y) {
    for (int x = 1; x + 1 < w; ++x) {
      double s = 0.0, s2 = 0.0;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const double g = gray[static_cast<size_t>(y + dy) * w + (x + dx)];
          s += g;
          s2 += g * g;
        }
      }
      const double var = s2 / 9.0 - (s / 9.0) * (s / 9.0);
      if (mask.Get(x, y)) {
        sum_in += var;
        ++n_in;
      } else {
        sum_out += var;
        ++n_out;
      }
    }
  }
  return {n_in ? sum_in / n_in : 0.0, n_out ? sum_out / n_out : 0.0};
}

void WriteSynthCorpus(const SynthConfig& cfg, uint64_t seed,
                      const std::filesystem::path& out_dir) {
  cfg.Validate();
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir / "images", ec);
  if (!ec) fs::create_directories(out_dir / "pairs" / "images", ec);
  if (ec) {
    throw Error(ErrorCode::kIoError,
                "cannot create " + out_dir.string() + ": " + ec.message());
  }

  Dataset ds;
  ds.split = Split::kTest;
  for (int i = 0; i < cfg.n_scenes; ++i) {
    const std::string id = SceneName("synth", i);
    SynthScene scene = GenerateScene(cfg, internal::MixSeed(seed, i));
    const std::string rel = "images/" + id + ".png";
    WritePng(scene.image, (out_dir / rel).string());
    ds.scenes.push_back(
        {id, rel, cfg.width, cfg.height, cfg.scale, cfg.capture_year});
    for (Polygon& p : scene.polygons) {
      ds.annotations.push_back({id, std::move(p), "slum"});
    }
  }
  SaveDataset(ds, out_dir / "dataset.json");
  SavePredictions(GtAsDetections(ds, 1.0), out_dir / "predictions_gt.json");

  Dataset before, after;
  for (int i = 0; i < cfg.n_pairs; ++i) {
    const std::string id = SceneName("pair", i);
    SynthPair pair = GeneratePair(cfg, internal::MixSeed(seed ^ kBackgroundStream, i));
    const std::string rel_before = "images/" + id + "_before.png";
    const std::string rel_after = "images/" + id + "_after.png";
    WritePng(pair.before.image, (out_dir / "pairs" / rel_before).string());
    WritePng(pair.after.image, (out_dir / "pairs" / rel_after).string());
    before.scenes.push_back(
        {id, rel_before, cfg.width, cfg.height, cfg.scale, cfg.before_year});
    after.scenes.push_back(
        {id, rel_after, cfg.width, cfg.height, cfg.scale, cfg.capture_year});
    for (Polygon& p : pair.before.polygons) {
      before.annotations.push_back({id, std::move(p), "slum"});
    }
    for (Polygon& p : pair.after.polygons) {
      after.annotations.push_back({id, std::move(p), "slum"});
    }
  }
  SaveDataset(before, out_dir / "pairs" / "before.json");
  SaveDataset(after, out_dir / "pairs" / "after.json");
}

}  // namespace slumkit
