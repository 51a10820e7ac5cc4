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

#include "slumkit/metrics.h"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <string>
#include <unordered_map>

#include "internal.h"
#include "json.hpp"
#include "slumkit/error.h"

namespace slumkit {
namespace {

// Area and bounding box, so that IoU only scans the overlap of two boxes.
struct MaskStats {
  uint64_t area = 0;
  PixelBox box{};
};

MaskStats StatsOf(const RasterMask& m) {
  MaskStats s;
  s.area = MaskArea(m);
  if (s.area > 0) s.box = *TryBoundingBox(m);
  return s;
}

void CheckSameShape(const RasterMask& a, const RasterMask& b) {
  if (!a.SameShape(b)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "IoU operands differ in size: " + std::to_string(a.width()) +
                    "x" + std::to_string(a.height()) + " vs " +
                    std::to_string(b.width()) + "x" +
                    std::to_string(b.height()));
  }
}

uint64_t IntersectionArea(const RasterMask& a, const MaskStats& sa,
                          const RasterMask& b, const MaskStats& sb) {
  if (sa.area == 0 || sb.area == 0) return 0;
  const int x0 = std::max(sa.box.x_min, sb.box.x_min);
  const int x1 = std::min(sa.box.x_max, sb.box.x_max);
  const int y0 = std::max(sa.box.y_min, sb.box.y_min);
  const int y1 = std::min(sa.box.y_max, sb.box.y_max);
  if (x0 > x1 || y0 > y1) return 0;
  uint64_t count = 0;
  const auto pa = a.bits();
  const auto pb = b.bits();
  for (int y = y0; y <= y1; ++y) {
    const size_t row = static_cast<size_t>(y) * a.width();
    for (int x = x0; x <= x1; ++x) count += pa[row + x] & pb[row + x];
  }
  return count;
}

double IouFromStats(const RasterMask& a, const MaskStats& sa,
                    const RasterMask& b, const MaskStats& sb) {
  const uint64_t inter = IntersectionArea(a, sa, b, sb);
  const uint64_t uni = sa.area + sb.area - inter;
  if (uni == 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

std::vector<size_t> DescendingScoreOrder(std::span<const ScoredMask> dets) {
  std::vector<size_t> order(dets.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t l, size_t r) {
    return dets[l].score > dets[r].score;
  });
  return order;
}

}  // namespace

double PairwiseIou(const RasterMask& a, const RasterMask& b) {
  CheckSameShape(a, b);
  return IouFromStats(a, StatsOf(a), b, StatsOf(b));
}

int MatchResult::TruePositives() const {
  return static_cast<int>(std::count_if(
      records.begin(), records.end(),
      [](const DetectionRecord& r) { return r.matched; }));
}

int MatchResult::FalsePositives() const {
  return static_cast<int>(records.size()) - TruePositives();
}

MatchResult MatchDetections(std::span<const RasterMask> gt,
                            std::span<const ScoredMask> detections,
                            double threshold, std::string scene_id) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "IoU threshold must lie in (0, 1]");
  }
  for (size_t i = 1; i < gt.size(); ++i) CheckSameShape(gt[0], gt[i]);
  for (const ScoredMask& d : detections) {
    if (!gt.empty()) CheckSameShape(gt[0], d.mask);
  }

  std::vector<MaskStats> gt_stats;
  gt_stats.reserve(gt.size());
  for (const RasterMask& g : gt) gt_stats.push_back(StatsOf(g));

  MatchResult result;
  result.scene_id = scene_id;
  result.num_gt = static_cast<int>(gt.size());
  std::vector<bool> taken(gt.size(), false);

  for (size_t d : DescendingScoreOrder(detections)) {
    const RasterMask& mask = detections[d].mask;
    const MaskStats ds = StatsOf(mask);
    int best = -1;
    double best_iou = 0.0;
    for (size_t g = 0; g < gt.size(); ++g) {
      if (taken[g]) continue;
      const double iou = IouFromStats(gt[g], gt_stats[g], mask, ds);
      if (best < 0 || iou > best_iou) {
        best = static_cast<int>(g);
        best_iou = iou;
      }
    }
    DetectionRecord rec;
    rec.scene_id = scene_id;
    rec.score = detections[d].score;
    rec.input_index = static_cast<int>(d);
    rec.iou_at_match = best_iou;
    if (best >= 0 && best_iou >= threshold) {
      taken[best] = true;
      rec.matched = true;
      rec.matched_gt_index = best;
    }
    result.records.push_back(std::move(rec));
  }
  result.unmatched_gt =
      static_cast<int>(std::count(taken.begin(), taken.end(), false));
  return result;
}

PrCurve BuildPrCurve(std::span<const MatchResult> results, int total_gt) {
  std::vector<const DetectionRecord*> pooled;
  for (const MatchResult& r : results) {
    for (const DetectionRecord& rec : r.records) pooled.push_back(&rec);
  }
  std::stable_sort(pooled.begin(), pooled.end(),
                   [](const DetectionRecord* l, const DetectionRecord* r) {
                     return l->score > r->score;
                   });
  PrCurve curve;
  curve.points.reserve(pooled.size());
  int tp = 0;
  for (size_t k = 0; k < pooled.size(); ++k) {
    if (pooled[k]->matched) ++tp;
    const double precision = static_cast<double>(tp) / (k + 1);
    const double recall =
        total_gt > 0 ? static_cast<double>(tp) / total_gt : 0.0;
    curve.points.push_back({pooled[k]->score, precision, recall});
  }
  return curve;
}

double AveragePrecision(const PrCurve& curve) {
  const auto& pts = curve.points;
  if (pts.empty()) return 0.0;
  // Suffix maximum gives the monotone envelope max_{r' >= r_i} p(r').
  std::vector<double> envelope(pts.size());
  double running = 0.0;
  for (size_t i = pts.size(); i-- > 0;) {
    running = std::max(running, pts[i].precision);
    envelope[i] = running;
  }
  double ap = 0.0;
  double prev_recall = 0.0;
  for (size_t i = 0; i < pts.size(); ++i) {
    ap += (pts[i].recall - prev_recall) * envelope[i];
    prev_recall = pts[i].recall;
  }
  return 100.0 * ap;
}

double UnionIou(std::span<const RasterMask> gt,
                std::span<const RasterMask> det) {
  const RasterMask* shape = !gt.empty() ? &gt[0] : !det.empty() ? &det[0] : nullptr;
  if (shape == nullptr) return 0.0;
  RasterMask g = UnionOfMasks(gt, shape->width(), shape->height());
  RasterMask d = UnionOfMasks(det, shape->width(), shape->height());
  return PairwiseIou(g, d);
}

EvalReport Evaluate(const Dataset& ds, const std::vector<Detection>& detections,
                    const EvalOptions& options) {
  if (!(options.score_floor >= 0.0 && options.score_floor <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "score floor must lie in [0, 1]");
  }
  const size_t n_scenes = ds.scenes.size();
  std::unordered_map<std::string, size_t> scene_of;
  for (size_t i = 0; i < n_scenes; ++i) scene_of[ds.scenes[i].id] = i;

  std::vector<std::vector<const Polygon*>> gt_by_scene(n_scenes);
  for (const InstanceAnnotation& a : ds.annotations) {
    auto it = scene_of.find(a.scene_id);
    if (it == scene_of.end()) {
      throw Error(ErrorCode::kUnknownScene,
                  "annotation references unknown scene '" + a.scene_id + "'");
    }
    gt_by_scene[it->second].push_back(&a.polygon);
  }
  std::vector<std::vector<const Detection*>> det_by_scene(n_scenes);
  for (const Detection& d : detections) {
    auto it = scene_of.find(d.scene_id);
    if (it == scene_of.end()) {
      throw Error(ErrorCode::kUnknownScene,
                  "detection references unknown scene '" + d.scene_id + "'");
    }
    det_by_scene[it->second].push_back(&d);
  }

  EvalReport report;
  report.iou_threshold = options.iou_threshold;
  report.score_floor = options.score_floor;
  report.scenes.resize(n_scenes);
  report.matches.resize(n_scenes);

  internal::ParallelFor(n_scenes, options.jobs, [&](size_t s) {
    const Scene& scene = ds.scenes[s];
    std::vector<RasterMask> gt;
    gt.reserve(gt_by_scene[s].size());
    for (const Polygon* p : gt_by_scene[s]) {
      gt.push_back(RasterizePolygon(*p, scene.width, scene.height));
    }
    std::vector<ScoredMask> dets;
    std::vector<RasterMask> kept;
    dets.reserve(det_by_scene[s].size());
    for (const Detection* d : det_by_scene[s]) {
      if (d->mask.width != scene.width || d->mask.height != scene.height) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "detection mask does not match scene '" + scene.id + "'");
      }
      dets.push_back({RleDecode(d->mask), d->score});
      if (d->score >= options.score_floor) kept.push_back(dets.back().mask);
    }

    MatchResult match =
        MatchDetections(gt, dets, options.iou_threshold, scene.id);

    SceneEval& se = report.scenes[s];
    se.scene_id = scene.id;
    se.num_gt = static_cast<int>(gt.size());
    se.num_det = static_cast<int>(dets.size());
    se.tp = match.TruePositives();
    se.fp = match.FalsePositives();
    se.fn = match.unmatched_gt;
    const RasterMask g = UnionOfMasks(gt, scene.width, scene.height);
    const RasterMask d = UnionOfMasks(kept, scene.width, scene.height);
    se.union_intersection_px =
        MaskArea(CombineMasks(g, d, CombineOp::kIntersection));
    se.union_union_px = MaskArea(CombineMasks(g, d, CombineOp::kUnion));
    se.union_iou = se.union_union_px == 0
                       ? 0.0
                       : static_cast<double>(se.union_intersection_px) /
                             static_cast<double>(se.union_union_px);
    se.ap50 = AveragePrecision(BuildPrCurve({&match, 1}, se.num_gt));
    report.matches[s] = std::move(match);
  });

  uint64_t inter = 0, uni = 0;
  double iou_sum = 0.0;
  for (size_t s = 0; s < n_scenes; ++s) {
    const SceneEval& se = report.scenes[s];
    report.tp += se.tp;
    report.fp += se.fp;
    report.fn += se.fn;
    report.total_gt += se.num_gt;
    inter += se.union_intersection_px;
    uni += se.union_union_px;
    for (const DetectionRecord& r : report.matches[s].records) {
      if (r.matched) iou_sum += r.iou_at_match;
    }
  }
  report.union_iou =
      uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
  report.mean_matched_iou = report.tp == 0 ? 0.0 : iou_sum / report.tp;
  report.curve = BuildPrCurve(report.matches, report.total_gt);
  report.ap50 = AveragePrecision(report.curve);
  return report;
}

std::string EvalReportToJson(const EvalReport& report) {
  using internal::RoundSig6;
  nlohmann::ordered_json root;
  root["iou_threshold"] = RoundSig6(report.iou_threshold);
  root["score_floor"] = RoundSig6(report.score_floor);
  root["ap50"] = RoundSig6(report.ap50);
  root["union_iou"] = RoundSig6(report.union_iou);
  root["mean_matched_iou"] = RoundSig6(report.mean_matched_iou);
  root["tp"] = report.tp;
  root["fp"] = report.fp;
  root["fn"] = report.fn;
  root["total_gt"] = report.total_gt;
  root["num_detections"] = report.tp + report.fp;
  nlohmann::ordered_json scenes = nlohmann::ordered_json::array();
  for (const SceneEval& se : report.scenes) {
    nlohmann::ordered_json j;
    j["scene_id"] = se.scene_id;
    j["num_gt"] = se.num_gt;
    j["num_det"] = se.num_det;
    j["tp"] = se.tp;
    j["fp"] = se.fp;
    j["fn"] = se.fn;
    j["union_iou"] = RoundSig6(se.union_iou);
    j["ap50"] = RoundSig6(se.ap50);
    scenes.push_back(std::move(j));
  }
  root["scenes"] = std::move(scenes);
  return root.dump(2) + "\n";
}

std::string EvalReportToCsv(const EvalReport& report) {
  using internal::FormatSig6;
  std::ostringstream out;
  out << "scene_id,num_gt,num_det,tp,fp,fn,union_iou,ap50\n";
  for (const SceneEval& se : report.scenes) {
    out << internal::CsvField(se.scene_id) << ',' << se.num_gt << ','
        << se.num_det << ',' << se.tp << ',' << se.fp << ',' << se.fn << ','
        << FormatSig6(se.union_iou) << ',' << FormatSig6(se.ap50) << '\n';
  }
  out << "TOTAL," << report.total_gt << ',' << (report.tp + report.fp) << ','
      << report.tp << ',' << report.fp << ',' << report.fn << ','
      << FormatSig6(report.union_iou) << ',' << FormatSig6(report.ap50)
      << '\n';
  return out.str();
}

std::string PrCurveToCsv(const PrCurve& curve) {
  using internal::FormatSig6;
  std::ostringstream out;
  out << "score,precision,recall\n";
  for (const PrPoint& p : curve.points) {
    out << FormatSig6(p.score) << ',' << FormatSig6(p.precision) << ','
        << FormatSig6(p.recall) << '\n';
  }
  return out.str();
}

}  // namespace slumkit
