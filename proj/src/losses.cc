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

#include "slumkit/losses.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "slumkit/error.h"

namespace slumkit {
namespace {

double SmoothL1(double d) {
  const double a = std::abs(d);
  return a < 1.0 ? 0.5 * d * d : a - 0.5;
}

double SmoothL1Grad(double d) {
  if (std::abs(d) < 1.0) return d;
  return d > 0.0 ? 1.0 : -1.0;
}

double MaxRelError(std::span<const double> analytic,
                   std::span<const double> numeric) {
  double worst = 0.0;
  for (size_t i = 0; i < analytic.size(); ++i) {
    const double err = std::abs(analytic[i] - numeric[i]) /
                       std::max(1.0, std::abs(analytic[i]));
    worst = std::max(worst, err);
  }
  return worst;
}

std::span<const double, 4> PredDeltas(const RoISample& s) {
  return std::span<const double, 4>(s.box_deltas.data() + 4 * (s.gt_class - 1),
                                    4);
}

double Uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

}  // namespace

void RoISample::Validate() const {
  if (num_classes < 1 || mask_size < 1) {
    throw Error(ErrorCode::kInvalidArgument, "RoI needs K >= 1 and m >= 1");
  }
  const size_t k = num_classes;
  const size_t mm = static_cast<size_t>(mask_size) * mask_size;
  if (class_logits.size() != k + 1) {
    throw Error(ErrorCode::kInvalidArgument, "class_logits must hold K + 1 values");
  }
  if (box_deltas.size() != 4 * k) {
    throw Error(ErrorCode::kInvalidArgument, "box_deltas must hold 4K values");
  }
  if (mask_probs.size() != k * mm) {
    throw Error(ErrorCode::kInvalidArgument, "mask_probs must hold K*m*m values");
  }
  if (gt_mask.size() != mm) {
    throw Error(ErrorCode::kInvalidArgument, "gt_mask must hold m*m values");
  }
  if (gt_class < 1 || gt_class > num_classes) {
    throw Error(ErrorCode::kIndexError,
                "gt_class " + std::to_string(gt_class) + " outside [1, " +
                    std::to_string(num_classes) + "]");
  }
}

LossValue MaskLoss(const RoISample& sample) {
  sample.Validate();
  const size_t mm = static_cast<size_t>(sample.mask_size) * sample.mask_size;
  const size_t offset = sample.MaskChannelOffset();
  const double inv = 1.0 / static_cast<double>(mm);

  LossValue out;
  out.gradient.assign(sample.mask_probs.size(), 0.0);
  double sum = 0.0;
  for (size_t i = 0; i < mm; ++i) {
    const double raw = sample.mask_probs[offset + i];
    if (!(raw >= 0.0 && raw <= 1.0)) {
      throw Error(ErrorCode::kInvalidProbability,
                  "mask probability " + std::to_string(raw) + " at index " +
                      std::to_string(i) + " outside [0, 1]");
    }
    const double p =
        std::clamp(raw, kMaskProbEpsilon, 1.0 - kMaskProbEpsilon);
    if (sample.gt_mask[i]) {
      sum += std::log(p);
      out.gradient[offset + i] = -inv / p;
    } else {
      sum += std::log1p(-p);
      out.gradient[offset + i] = inv / (1.0 - p);
    }
  }
  out.value = -sum * inv;
  return out;
}

LossValue ClsLoss(std::span<const double> logits, int gt_class) {
  if (gt_class < 0 || static_cast<size_t>(gt_class) >= logits.size()) {
    throw Error(ErrorCode::kIndexError,
                "class index " + std::to_string(gt_class) + " outside [0, " +
                    std::to_string(logits.size()) + ")");
  }
  for (double z : logits) {
    if (!std::isfinite(z)) {
      throw Error(ErrorCode::kInvalidArgument, "logits must be finite");
    }
  }
  const double mx = *std::max_element(logits.begin(), logits.end());
  double denom = 0.0;
  for (double z : logits) denom += std::exp(z - mx);
  const double log_z = mx + std::log(denom);

  LossValue out;
  out.value = log_z - logits[gt_class];
  out.gradient.resize(logits.size());
  for (size_t i = 0; i < logits.size(); ++i) {
    out.gradient[i] = std::exp(logits[i] - log_z);
  }
  out.gradient[gt_class] -= 1.0;
  return out;
}

LossValue BoxLoss(std::span<const double, 4> pred,
                  std::span<const double, 4> target) {
  LossValue out;
  out.gradient.resize(4);
  for (int i = 0; i < 4; ++i) {
    const double d = pred[i] - target[i];
    out.value += SmoothL1(d);
    out.gradient[i] = SmoothL1Grad(d);
  }
  return out;
}

LossBreakdown TotalLoss(const RoISample& sample) {
  sample.Validate();
  LossBreakdown b;
  b.l_cls = ClsLoss(sample.class_logits, sample.gt_class).value;
  b.l_box = BoxLoss(PredDeltas(sample), sample.box_targets).value;
  b.l_mask = MaskLoss(sample).value;
  b.total = b.l_cls + b.l_box + b.l_mask;
  return b;
}

const char* LossKindName(LossKind kind) {
  switch (kind) {
    case LossKind::kClassification:
      return "cls";
    case LossKind::kBox:
      return "box";
    case LossKind::kMask:
      return "mask";
  }
  return "?";
}

double GradCheck(LossKind kind, const RoISample& sample, double step) {
  sample.Validate();
  if (!(step > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "step must be positive");
  }
  switch (kind) {
    case LossKind::kClassification: {
      std::vector<double> z = sample.class_logits;
      const LossValue base = ClsLoss(z, sample.gt_class);
      std::vector<double> numeric(z.size());
      for (size_t i = 0; i < z.size(); ++i) {
        const double keep = z[i];
        z[i] = keep + step;
        const double up = ClsLoss(z, sample.gt_class).value;
        z[i] = keep - step;
        const double down = ClsLoss(z, sample.gt_class).value;
        z[i] = keep;
        numeric[i] = (up - down) / (2.0 * step);
      }
      return MaxRelError(base.gradient, numeric);
    }
    case LossKind::kBox: {
      std::array<double, 4> pred;
      std::copy_n(PredDeltas(sample).begin(), 4, pred.begin());
      for (int i = 0; i < 4; ++i) {
        const double d = pred[i] - sample.box_targets[i];
        if (std::abs(std::abs(d) - 1.0) <= 10.0 * step) {
          throw Error(ErrorCode::kNonDifferentiablePoint,
                      "box residual " + std::to_string(d) +
                          " is too close to the smooth-L1 kink");
        }
      }
      const LossValue base = BoxLoss(pred, sample.box_targets);
      std::vector<double> numeric(4);
      for (int i = 0; i < 4; ++i) {
        const double keep = pred[i];
        pred[i] = keep + step;
        const double up = BoxLoss(pred, sample.box_targets).value;
        pred[i] = keep - step;
        const double down = BoxLoss(pred, sample.box_targets).value;
        pred[i] = keep;
        numeric[i] = (up - down) / (2.0 * step);
      }
      return MaxRelError(base.gradient, numeric);
    }
    case LossKind::kMask: {
      const size_t mm =
          static_cast<size_t>(sample.mask_size) * sample.mask_size;
      const size_t offset = sample.MaskChannelOffset();
      for (size_t i = 0; i < mm; ++i) {
        const double p = sample.mask_probs[offset + i];
        if (!(p - step > kMaskProbEpsilon && p + step < 1.0 - kMaskProbEpsilon)) {
          throw Error(ErrorCode::kNonDifferentiablePoint,
                      "mask probability " + std::to_string(p) +
                          " is within one step of the clamp boundary");
        }
      }
      const LossValue base = MaskLoss(sample);
      RoISample probe = sample;
      std::vector<double> analytic(mm), numeric(mm);
      for (size_t i = 0; i < mm; ++i) {
        double& p = probe.mask_probs[offset + i];
        const double keep = p;
        p = keep + step;
        const double up = MaskLoss(probe).value;
        p = keep - step;
        const double down = MaskLoss(probe).value;
        p = keep;
        numeric[i] = (up - down) / (2.0 * step);
        analytic[i] = base.gradient[offset + i];
      }
      return MaxRelError(analytic, numeric);
    }
  }
  return 0.0;
}

RoISample RandomInteriorSample(int num_classes, int mask_size, uint64_t seed) {
  std::mt19937_64 rng(seed);
  RoISample s;
  s.num_classes = num_classes;
  s.mask_size = mask_size;
  s.gt_class = 1 + static_cast<int>(rng() % num_classes);
  s.class_logits.resize(num_classes + 1);
  for (double& z : s.class_logits) z = Uniform(rng, -4.0, 4.0);
  s.box_deltas.resize(4 * num_classes);
  for (double& d : s.box_deltas) d = Uniform(rng, -2.0, 2.0);
  for (int i = 0; i < 4; ++i) {
    const double pred = s.box_deltas[4 * (s.gt_class - 1) + i];
    // Residual magnitude drawn away from the kink at |d| = 1.
    double mag = rng() % 2 ? Uniform(rng, 0.0, 0.9) : Uniform(rng, 1.1, 3.0);
    s.box_targets[i] = pred - (rng() % 2 ? mag : -mag);
  }
  const size_t mm = static_cast<size_t>(mask_size) * mask_size;
  s.mask_probs.resize(num_classes * mm);
  for (double& p : s.mask_probs) p = Uniform(rng, 0.05, 0.95);
  s.gt_mask.resize(mm);
  for (uint8_t& y : s.gt_mask) y = static_cast<uint8_t>(rng() & 1);
  return s;
}

std::vector<LossCheckRow> RunLossCheck(int trials, uint64_t seed,
                                       double tolerance) {
  std::vector<LossCheckRow> rows;
  for (LossKind kind :
       {LossKind::kClassification, LossKind::kBox, LossKind::kMask}) {
    LossCheckRow row{kind, trials, 0.0, tolerance, true};
    for (int t = 0; t < trials; ++t) {
      const uint64_t sample_seed = seed * 1000003ULL + static_cast<uint64_t>(t);
      const int k = 1 + static_cast<int>(sample_seed % 3);
      const RoISample s = RandomInteriorSample(k, 14, sample_seed);
      row.max_rel_error = std::max(row.max_rel_error, GradCheck(kind, s));
    }
    row.passed = row.max_rel_error <= tolerance;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace slumkit
