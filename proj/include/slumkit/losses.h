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

#ifndef SLUMKIT_LOSSES_H_
#define SLUMKIT_LOSSES_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace slumkit {

inline constexpr double kMaskProbEpsilon = 1e-7;

// Per-RoI head outputs and targets for a K-class instance segmenter.
//
// Layouts:
//   class_logits  K + 1 entries, index 0 is background.
//   box_deltas    K x 4, row c - 1 holds the deltas predicted for class c.
//   mask_probs    K x m x m, channel c - 1 is the mask predicted for class c.
//   gt_mask       m x m, 0/1.
// gt_class is in [1, K].
struct RoISample {
  int num_classes = 1;
  int mask_size = 28;
  std::vector<double> class_logits;
  std::vector<double> box_deltas;
  std::array<double, 4> box_targets{};
  std::vector<double> mask_probs;
  int gt_class = 1;
  std::vector<uint8_t> gt_mask;

  // Shape and range checks. Throws Error(kInvalidArgument) for shape
  // problems and Error(kIndexError) for a bad gt_class.
  void Validate() const;

  size_t MaskChannelOffset() const {
    return static_cast<size_t>(gt_class - 1) * mask_size * mask_size;
  }
};

struct LossValue {
  double value = 0.0;
  std::vector<double> gradient;
};

struct LossBreakdown {
  double l_cls = 0.0;
  double l_box = 0.0;
  double l_mask = 0.0;
  double total = 0.0;
};

// Average binary cross-entropy between channel gt_class of mask_probs and
// gt_mask, with probabilities clamped to [eps, 1 - eps]. The gradient has the
// shape of mask_probs and is zero outside channel gt_class. Throws
// Error(kInvalidProbability) when a channel-k entry lies outside [0, 1].
LossValue MaskLoss(const RoISample& sample);

// Softmax cross-entropy -log softmax(logits)[gt_class]; gradient is
// softmax - one_hot. Throws Error(kIndexError).
LossValue ClsLoss(std::span<const double> logits, int gt_class);

// Sum of smooth-L1 over the four coordinates of pred - target. Gradient is
// with respect to pred.
LossValue BoxLoss(std::span<const double, 4> pred,
                  std::span<const double, 4> target);

// Unweighted sum of the three heads, using the class-gt_class box deltas and
// mask channel.
LossBreakdown TotalLoss(const RoISample& sample);

enum class LossKind { kClassification, kBox, kMask };
const char* LossKindName(LossKind kind);

// Max over inputs of |analytic - central difference| / max(1, |analytic|).
// Throws Error(kNonDifferentiablePoint) if the sample sits within reach of a
// clamp boundary (mask) or of the |d| = 1 kink (box, 10 * step).
double GradCheck(LossKind kind, const RoISample& sample, double step = 1e-5);

// Random sample whose mask probabilities lie in [0.05, 0.95] and whose box
// residuals avoid the smooth-L1 kink.
RoISample RandomInteriorSample(int num_classes, int mask_size, uint64_t seed);

struct LossCheckRow {
  LossKind kind;
  int trials = 0;
  double max_rel_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

// Gradient check of every loss on `trials` random interior samples.
std::vector<LossCheckRow> RunLossCheck(int trials, uint64_t seed,
                                       double tolerance = 1e-5);

}  // namespace slumkit

#endif  // SLUMKIT_LOSSES_H_
