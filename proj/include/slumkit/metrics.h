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

#ifndef SLUMKIT_METRICS_H_
#define SLUMKIT_METRICS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slumkit/dataset.h"
#include "slumkit/geometry.h"

namespace slumkit {

// |a ∩ b| / |a ∪ b|, and 0 when both masks are empty.
// Throws Error(kDimensionMismatch).
double PairwiseIou(const RasterMask& a, const RasterMask& b);

struct ScoredMask {
  RasterMask mask;
  double score;
};

struct DetectionRecord {
  std::string scene_id;
  double score = 0.0;
  // Position of the detection in the caller's input list.
  int input_index = 0;
  bool matched = false;
  std::optional<int> matched_gt_index;
  // IoU with the matched ground truth; for a false positive, the best IoU
  // against any ground truth still unmatched at its turn (0 if none).
  double iou_at_match = 0.0;
};

struct MatchResult {
  std::string scene_id;
  // In matching order: descending score, ties by input order.
  std::vector<DetectionRecord> records;
  int num_gt = 0;
  int unmatched_gt = 0;

  int TruePositives() const;
  int FalsePositives() const;
};

// Greedy matching: detections in descending score order (stable) each claim
// the still-unmatched ground truth with the highest IoU (lowest index on
// ties) when that IoU >= threshold; otherwise they are false positives.
MatchResult MatchDetections(std::span<const RasterMask> gt,
                            std::span<const ScoredMask> detections,
                            double threshold, std::string scene_id = "");

struct PrPoint {
  double score;
  double precision;
  double recall;
};

struct PrCurve {
  std::vector<PrPoint> points;
};

// Pools records from all scenes (scene order, then matching order), stably
// sorts by descending score and accumulates precision/recall per detection.
// Recall is reported as 0 when total_gt is 0.
PrCurve BuildPrCurve(std::span<const MatchResult> results, int total_gt);

// Area under the monotone precision envelope, in percent.
double AveragePrecision(const PrCurve& curve);

// PairwiseIou(union(gt), union(det)). 0 when both lists are empty.
double UnionIou(std::span<const RasterMask> gt,
                std::span<const RasterMask> det);

struct SceneEval {
  std::string scene_id;
  int num_gt = 0;
  int num_det = 0;
  int tp = 0;
  int fp = 0;
  int fn = 0;
  uint64_t union_intersection_px = 0;
  uint64_t union_union_px = 0;
  double union_iou = 0.0;
  double ap50 = 0.0;
};

struct EvalReport {
  double iou_threshold = 0.5;
  double score_floor = 0.5;
  double ap50 = 0.0;
  // Pixel-level: Σ|G∩D| / Σ|G∪D| over scenes, with G and D the per-scene
  // unions of ground truth and of detections scoring >= score_floor.
  double union_iou = 0.0;
  // Mean IoU over true-positive matches.
  double mean_matched_iou = 0.0;
  int tp = 0;
  int fp = 0;
  int fn = 0;
  int total_gt = 0;
  std::vector<SceneEval> scenes;
  std::vector<MatchResult> matches;
  PrCurve curve;
};

struct EvalOptions {
  double iou_threshold = 0.5;
  double score_floor = 0.5;
  int jobs = 1;
};

// Detections must already be validated against `ds`. Matching and AP use
// every detection; score_floor only affects the union IoU.
EvalReport Evaluate(const Dataset& ds, const std::vector<Detection>& detections,
                    const EvalOptions& options = {});

// Serialization. Floats carry 6 significant digits.
std::string EvalReportToJson(const EvalReport& report);
std::string EvalReportToCsv(const EvalReport& report);
std::string PrCurveToCsv(const PrCurve& curve);

}  // namespace slumkit

#endif  // SLUMKIT_METRICS_H_
