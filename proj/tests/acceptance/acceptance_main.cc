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

// Acceptance runner: one PASS/FAIL line per criterion, non-zero exit on any
// failure. Each check compares the library against an independent reference
// (tests/oracle) or a closed-form value.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracle/oracle.h"
#include "slumkit/change.h"
#include "slumkit/dataset.h"
#include "slumkit/error.h"
#include "slumkit/geometry.h"
#include "slumkit/losses.h"
#include "slumkit/metrics.h"
#include "slumkit/synth.h"
#include "slumkit/transforms.h"

namespace slumkit {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects the first failure message of a criterion.
class Check {
 public:
  void Expect(bool ok, const std::string& what) {
    if (!ok && failure_.empty()) failure_ = what;
  }
  bool ok() const { return failure_.empty(); }
  const std::string& failure() const { return failure_; }

 private:
  std::string failure_;
};

std::string Fmt(const char* fmt, double a, double b = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), fmt, a, b);
  return buf;
}

Polygon Rect(double x0, double y0, double x1, double y1) {
  return Polygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

// ---- 1 ---------------------------------------------------------------------

Check Criterion1(std::string& note) {
  note =
      "informational: reference accuracy figures need the original imagery "
      "and a trained network; criteria 2-8 substitute";
  return {};
}

// ---- 2 ---------------------------------------------------------------------

struct RandomCase {
  Dataset ds;
  std::vector<Detection> dets;
  std::vector<oracle::OracleScene> ref;
};

RandomCase MakeRandomCase(std::mt19937_64& rng, int n_scenes) {
  constexpr int kSize = 64;
  std::uniform_int_distribution<int> count(0, 6);
  std::uniform_int_distribution<int> coord(0, kSize - 1);
  std::uniform_real_distribution<double> real(0.0, kSize);
  RandomCase c;
  c.ds.split = Split::kTest;
  for (int s = 0; s < n_scenes; ++s) {
    const std::string id = "r" + std::to_string(s);
    c.ds.scenes.push_back({id, id + ".png", kSize, kSize, Scale::k100m, 2018});
    oracle::OracleScene sc;
    const int ng = count(rng);
    for (int g = 0; g < ng; ++g) {
      std::vector<Point> v;
      if (rng() % 2 == 0) {
        int x0 = coord(rng), x1 = coord(rng), y0 = coord(rng), y1 = coord(rng);
        if (x0 > x1) std::swap(x0, x1);
        if (y0 > y1) std::swap(y0, y1);
        v = Rect(x0, y0, x1 + 1, y1 + 1).vertices();
      } else {
        const int nv = 3 + static_cast<int>(rng() % 5);
        for (int k = 0; k < nv; ++k) v.push_back({real(rng), real(rng)});
      }
      c.ds.annotations.push_back({id, Polygon(v), "slum"});
      sc.gt.push_back(oracle::EvenOddRaster(v, kSize, kSize));
    }
    const int nd = count(rng);
    for (int d = 0; d < nd; ++d) {
      RasterMask m(kSize, kSize);
      if (!sc.gt.empty() && rng() % 3 != 0) {
        // Shifted copy of a ground-truth instance.
        const RasterMask& g = sc.gt[rng() % sc.gt.size()];
        const int sx = static_cast<int>(rng() % 7) - 3;
        const int sy = static_cast<int>(rng() % 7) - 3;
        for (int y = 0; y < kSize; ++y) {
          for (int x = 0; x < kSize; ++x) {
            const int tx = x + sx, ty = y + sy;
            if (g.Get(x, y) && tx >= 0 && tx < kSize && ty >= 0 && ty < kSize) {
              m.Set(tx, ty, true);
            }
          }
        }
      } else {
        m = oracle::RandomMask(kSize, kSize, 0.02 * (rng() % 10), rng);
      }
      // Scores in tenths so that ties occur.
      const double score = static_cast<double>(rng() % 11) / 10.0;
      c.dets.push_back({id, RleEncode(m), score, "slum"});
      sc.dets.push_back({std::move(m), score});
    }
    c.ref.push_back(std::move(sc));
  }
  return c;
}

Check Criterion2(std::string& note) {
  Check c;
  std::mt19937_64 rng(20240611);
  const auto t0 = Clock::now();
  int cases = 0;
  int scenes = 0;
  while (scenes < 200) {
    const int n = std::min(1 + cases % 4, 200 - scenes);
    RandomCase rc = MakeRandomCase(rng, n);
    scenes += n;
    ++cases;
    const EvalReport rep = Evaluate(rc.ds, rc.dets);
    const oracle::OracleEval ref = oracle::Evaluate(rc.ref, 0.5);
    c.Expect(rep.tp == ref.tp && rep.fp == ref.fp && rep.fn == ref.fn,
             "TP/FP/FN differ from oracle in case " + std::to_string(cases));
    bool same_points = rep.curve.points.size() == ref.points.size();
    for (size_t k = 0; same_points && k < ref.points.size(); ++k) {
      same_points = rep.curve.points[k].precision == ref.points[k].precision &&
                    rep.curve.points[k].recall == ref.points[k].recall;
    }
    c.Expect(same_points, "PR points differ in case " + std::to_string(cases));
    c.Expect(std::fabs(rep.ap50 - ref.ap) <= 1e-9,
             Fmt("AP %.12g vs oracle %.12g", rep.ap50, ref.ap));
  }
  const double secs = SecondsSince(t0);
  c.Expect(secs < 10.0, Fmt("runtime %.2f s", secs));
  note = Fmt("200 scenes, %.0f cases, %.2f s", cases, secs);
  return c;
}

// ---- 3 ---------------------------------------------------------------------

Detection StripDetection(const std::string& id, int x0, int x1, double score) {
  RasterMask m(100, 1);
  for (int x = x0; x < x1; ++x) m.Set(x, 0, true);
  return {id, RleEncode(m), score, "slum"};
}

Check Criterion3(std::string& note) {
  Check c;
  Dataset ds;
  ds.scenes.push_back({"f", "f.png", 100, 1, Scale::k100m, 2018});
  ds.annotations.push_back({"f", Rect(0, 0, 10, 1), "slum"});
  ds.annotations.push_back({"f", Rect(50, 0, 60, 1), "slum"});
  // IoU 0.8 with the first instance, 0.3 and 0.6 with the second.
  std::vector<Detection> dets = {StripDetection("f", 0, 8, 0.9),
                                 StripDetection("f", 50, 53, 0.8),
                                 StripDetection("f", 50, 56, 0.7)};
  const EvalReport rep = Evaluate(ds, dets);
  c.Expect(std::fabs(rep.ap50 - 83.33) <= 0.01, Fmt("AP %.6f", rep.ap50));

  SynthConfig cfg;
  cfg.width = cfg.height = 128;
  cfg.instance_radius = {8.0, 30.0};
  Dataset perfect;
  for (int s = 0; s < 4; ++s) {
    const std::string id = "p" + std::to_string(s);
    perfect.scenes.push_back({id, id + ".png", 128, 128, Scale::k100m, 2018});
    for (Polygon& p : GenerateScene(cfg, 100 + s).polygons) {
      perfect.annotations.push_back({id, std::move(p), "slum"});
    }
  }
  const EvalReport best = Evaluate(perfect, GtAsDetections(perfect, 1.0));
  c.Expect(best.ap50 == 100.0, Fmt("perfect AP %.17g", best.ap50));
  c.Expect(best.union_iou == 1.0, Fmt("perfect union IoU %.17g", best.union_iou));
  note = Fmt("fixture AP %.4f, perfect AP %.1f", rep.ap50, best.ap50);
  return c;
}

// ---- 4 ---------------------------------------------------------------------

Check Criterion4(std::string& note) {
  Check c;
  const auto t0 = Clock::now();
  RoISample half;
  half.num_classes = 2;
  half.mask_size = 28;
  half.class_logits.assign(3, 0.0);
  half.box_deltas.assign(8, 0.0);
  half.mask_probs.assign(2 * 28 * 28, 0.5);
  half.gt_class = 2;
  half.gt_mask.assign(28 * 28, 0);
  for (size_t i = 0; i < half.gt_mask.size(); i += 3) half.gt_mask[i] = 1;
  const double v = MaskLoss(half).value;
  c.Expect(std::fabs(v - std::numbers::ln2) <= 1e-9, Fmt("mask loss %.15f", v));

  double worst = 0.0;
  for (const LossCheckRow& row : RunLossCheck(100, 7)) {
    worst = std::max(worst, row.max_rel_error);
    c.Expect(row.passed && row.tolerance == 1e-5 && row.trials == 100,
             std::string(LossKindName(row.kind)) +
                 Fmt(" gradient error %.3e", row.max_rel_error));
  }

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> prob(0.0, 1.0);
  for (uint64_t seed = 0; seed < 100; ++seed) {
    RoISample s = RandomInteriorSample(2 + seed % 3, 14, seed);
    const LossValue base = MaskLoss(s);
    const size_t off = s.MaskChannelOffset();
    const size_t mm = static_cast<size_t>(s.mask_size) * s.mask_size;
    for (size_t i = 0; i < s.mask_probs.size(); ++i) {
      if (i < off || i >= off + mm) s.mask_probs[i] = prob(rng);
    }
    const LossValue moved = MaskLoss(s);
    c.Expect(base.value == moved.value && base.gradient == moved.gradient,
             "mask loss depends on another channel");
  }
  const double secs = SecondsSince(t0);
  c.Expect(secs < 5.0, Fmt("runtime %.2f s", secs));
  note = Fmt("max gradient rel. error %.2e, %.2f s", worst, secs);
  return c;
}

// ---- 5 ---------------------------------------------------------------------

Check Criterion5(std::string& note) {
  Check c;
  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    const int w = 1 + static_cast<int>(rng() % 48);
    const int h = 1 + static_cast<int>(rng() % 48);
    RasterMask m = oracle::RandomMask(w, h, (i % 11) / 10.0, rng);
    c.Expect(RleDecode(RleEncode(m)) == m, "RLE roundtrip " + std::to_string(i));
  }
  for (int i = 0; i < 500; ++i) {
    const int x0 = static_cast<int>(rng() % 40), y0 = static_cast<int>(rng() % 40);
    const int bw = 1 + static_cast<int>(rng() % 30);
    const int bh = 1 + static_cast<int>(rng() % 30);
    const uint64_t area = MaskArea(RasterizePolygon(Rect(x0, y0, x0 + bw, y0 + bh), 80, 80));
    c.Expect(area == static_cast<uint64_t>(bw) * bh,
             Fmt("rectangle area %.0f vs %.0f", area, bw * bh));
  }
  const std::vector<Point> bowtie = {{0, 0}, {20, 16}, {20, 0}, {0, 16}};
  c.Expect(RasterizePolygon(bowtie, 24, 20) == oracle::EvenOddRaster(bowtie, 24, 20),
           "bowtie differs from even-odd reference");
  std::uniform_real_distribution<double> coord(-4.0, 36.0);
  int self_intersecting = 0;
  for (int i = 0; i < 300; ++i) {
    std::vector<Point> v(4 + rng() % 6);
    for (Point& p : v) p = {coord(rng), coord(rng)};
    try {
      ValidatePolygonVertices(v);
    } catch (const Error&) {
      continue;
    }
    if (!oracle::IsSimple(v)) ++self_intersecting;
    c.Expect(RasterizePolygon(v, 32, 32) == oracle::EvenOddRaster(v, 32, 32),
             "random polygon " + std::to_string(i) + " differs from reference");
  }
  c.Expect(self_intersecting > 100, "too few self-intersecting samples");
  note = Fmt("1000 RLE masks, %.0f self-intersecting polygons", self_intersecting);
  return c;
}

// ---- 6 ---------------------------------------------------------------------

Check Criterion6(std::string& note) {
  Check c;
  const ResizePadPlan plan = PlanResizePad(1280, 720, 1024);
  c.Expect(plan.content_width == 1024 && plan.content_height == 576,
           "content size");
  c.Expect(plan.pad_left == 0 && plan.pad_top == 224 &&
               1024 - plan.content_height - plan.pad_top == 224,
           "padding");
  c.Expect(plan.scale_factor == 0.8, Fmt("scale %.17g", plan.scale_factor));
  const ResizePadResult r =
      ResizePad(RgbImage(1280, 720), {Rect(0, 0, 1280, 720), Rect(100, 50, 600, 400)}, 1024);
  c.Expect(r.image.width() == 1024 && r.image.height() == 1024, "canvas size");
  const std::vector<Point> want0 = {{0, 224}, {1024, 224}, {1024, 800}, {0, 800}};
  const std::vector<Point> want1 = {{80, 264}, {480, 264}, {480, 544}, {80, 544}};
  c.Expect(r.polygons.size() == 2 && r.polygons[0].vertices() == want0 &&
               r.polygons[1].vertices() == want1,
           "vertex mapping not exact");

  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> px(-50.0, 700.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Point p = {px(rng), px(rng)};
    const int w = 640, h = 480;
    Point q = p;
    if (i % 2 == 0) {
      GeomTransform f;
      f.flip_h = true;
      f.flip_v = (i % 4 == 0);
      q = TransformPoint(f, TransformPoint(f, p, w, h), w, h);
    } else {
      GeomTransform t;
      t.angle_deg = (i % 3 == 0) ? -360.0 : 360.0;
      q = TransformPoint(t, p, w, h);
    }
    worst = std::max(worst, std::hypot(q.x - p.x, q.y - p.y));
  }
  c.Expect(worst <= 1e-9, Fmt("identity error %.3e px", worst));
  note = Fmt("scale %.2f, identity error %.1e px", plan.scale_factor, worst);
  return c;
}

// ---- 7 ---------------------------------------------------------------------

RasterMask FirstPixels(int w, int h, int n) {
  RasterMask m(w, h);
  for (int i = 0; i < n; ++i) m.Set(i % w, i / w, true);
  return m;
}

RasterMask UnionOf(const std::vector<Polygon>& polys, int w, int h) {
  RasterMask out(w, h);
  for (const Polygon& p : polys) {
    out = CombineMasks(out, RasterizePolygon(p, w, h), CombineOp::kUnion);
  }
  return out;
}

Check Criterion7(std::string& note) {
  Check c;
  const ChangeResult ex = DetectChange(FirstPixels(40, 40, 400), FirstPixels(40, 40, 541));
  c.Expect(ex.percent_change && *ex.percent_change == 35.25,
           "(400, 541) is not +35.25");
  const RasterMask same = FirstPixels(30, 30, 321);
  const ChangeResult id = DetectChange(same, same);
  c.Expect(id.percent_change && *id.percent_change == 0.0, "identity is not 0");

  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const int w = 1 + static_cast<int>(rng() % 32);
    const int h = 1 + static_cast<int>(rng() % 32);
    const RasterMask a = oracle::RandomMask(w, h, (i % 10) / 9.0, rng);
    const RasterMask b = oracle::RandomMask(w, h, 0.5, rng);
    const ChangeResult ab = DetectChange(a, b);
    const ChangeResult ba = DetectChange(b, a);
    const uint64_t stable = ab.change_map.Count(ChangeLabel::kStable);
    const uint64_t added = ab.change_map.Count(ChangeLabel::kAdded);
    const uint64_t removed = ab.change_map.Count(ChangeLabel::kRemoved);
    c.Expect(ab.area_before == oracle::CountSet(a) &&
                 ab.area_after == oracle::CountSet(b) &&
                 stable + removed == ab.area_before &&
                 stable + added == ab.area_after,
             "conservation fails in pair " + std::to_string(i));
    c.Expect(ba.change_map.Count(ChangeLabel::kAdded) == removed &&
                 ba.change_map.Count(ChangeLabel::kRemoved) == added &&
                 ba.area_before == ab.area_after,
             "antisymmetry fails in pair " + std::to_string(i));
    if (ab.percent_change && ba.percent_change) {
      // Signed pixel deltas cancel: before * p_ab + after * p_ba = 0.
      const double sum = ab.area_before * *ab.percent_change +
                         ab.area_after * *ba.percent_change;
      c.Expect(std::fabs(sum) <= 1e-9 * (ab.area_before + ab.area_after) * 100,
               "percent antisymmetry fails in pair " + std::to_string(i));
    }
  }

  SynthConfig cfg;
  cfg.growth_factor = 1.3525;
  double lo = 1e9, hi = -1e9;
  for (uint64_t seed = 0; seed < 5; ++seed) {
    const SynthPair pair = GeneratePair(cfg, seed);
    const ChangeResult r = DetectChange(UnionOf(pair.before.polygons, cfg.width, cfg.height),
                                        UnionOf(pair.after.polygons, cfg.width, cfg.height));
    const double p = r.percent_change.value_or(-1e9);
    lo = std::min(lo, p);
    hi = std::max(hi, p);
    c.Expect(std::fabs(p - 35.25) <= 1.5, Fmt("synthetic pair %+.2f%%", p));
  }
  note = Fmt("synthetic growth %+.2f..%+.2f%%", lo, hi);
  return c;
}

// ---- 8 ---------------------------------------------------------------------

int RunCli(const std::string& args, std::string* out = nullptr) {
  const std::string cmd =
      std::string("\"") + SLUMKIT_CLI_PATH + "\" " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return -1;
  std::array<char, 4096> buf;
  std::string text;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) text.append(buf.data(), n);
  const int status = pclose(pipe);
  if (out != nullptr) *out = text;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Replaces every occurrence of `dir` so logs of different runs compare.
std::string Relativize(std::string text, const std::string& dir) {
  for (size_t pos; (pos = text.find(dir)) != std::string::npos;) {
    text.replace(pos, dir.size(), "<dir>");
  }
  return text;
}

// Runs synth, evaluate (ground truth as predictions) and change into `dir`;
// returns the concatenated stdout with `dir` masked out.
std::string RunPipeline(const fs::path& dir, Check& c) {
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::string log, out;
  const fs::path corpus = dir / "corpus";
  c.Expect(RunCli("synth --seed 7 --out " + corpus.string(), &out) == 0,
           "synth failed: " + out);
  log += out;
  c.Expect(RunCli("evaluate --gt " + (corpus / "dataset.json").string() +
                      " --pred " + (corpus / "predictions_gt.json").string() +
                      " --out " + (dir / "eval.json").string() + " --csv " +
                      (dir / "eval.csv").string() + " --pr-csv " +
                      (dir / "pr.csv").string(),
                  &out) == 0,
           "evaluate failed: " + out);
  c.Expect(out.find("ap50: 100.00") != std::string::npos,
           "GT-as-prediction AP is not 100");
  log += out;
  c.Expect(RunCli("change --before " + (corpus / "pairs" / "before.json").string() +
                      " --after " + (corpus / "pairs" / "after.json").string() +
                      " --scene pair_000 --out " + (dir / "change.json").string() +
                      " --map " + (dir / "change.png").string(),
                  &out) == 0,
           "change failed: " + out);
  log += out;
  return Relativize(log, dir.string());
}

Check Criterion8(std::string& note, Clock::time_point suite_start) {
  Check c;
  const fs::path root = fs::temp_directory_path() / "slumkit_acceptance";
  const std::string log_a = RunPipeline(root / "a", c);
  const std::string log_b = RunPipeline(root / "b", c);
  c.Expect(log_a == log_b, "stdout differs between runs");
  size_t files = 0;
  for (const auto& entry : fs::recursive_directory_iterator(root / "a")) {
    if (!entry.is_regular_file()) continue;
    ++files;
    const fs::path rel = fs::relative(entry.path(), root / "a");
    c.Expect(fs::exists(root / "b" / rel) &&
                 Slurp(entry.path()) == Slurp(root / "b" / rel),
             "output differs: " + rel.string());
  }
  c.Expect(files > 8, "pipeline wrote too few files");
  const double secs = SecondsSince(suite_start);
  c.Expect(secs < 60.0, Fmt("acceptance suite took %.1f s", secs));
  note = Fmt("%.0f files byte-identical, suite %.1f s", files, secs);
  return c;
}

}  // namespace
}  // namespace slumkit

int main() {
  using slumkit::Check;
  const auto t0 = slumkit::Clock::now();
  struct Row {
    const char* name;
    std::function<Check(std::string&)> run;
  };
  const std::vector<Row> rows = {
      {"reference figures (statement)", slumkit::Criterion1},
      {"metric correctness vs oracle", slumkit::Criterion2},
      {"hand-computed AP fixture", slumkit::Criterion3},
      {"loss kernels", slumkit::Criterion4},
      {"geometry", slumkit::Criterion5},
      {"preprocessing contract", slumkit::Criterion6},
      {"change detection", slumkit::Criterion7},
      {"end-to-end determinism",
       [t0](std::string& note) { return slumkit::Criterion8(note, t0); }},
  };
  int failures = 0;
  for (size_t i = 0; i < rows.size(); ++i) {
    std::string note;
    Check c;
    try {
      c = rows[i].run(note);
    } catch (const std::exception& e) {
      c.Expect(false, std::string("exception: ") + e.what());
    }
    std::printf("criterion %zu: %-31s %s  (%s)\n", i + 1, rows[i].name,
                c.ok() ? "PASS" : "FAIL", c.ok() ? note.c_str() : c.failure().c_str());
    if (!c.ok()) ++failures;
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
