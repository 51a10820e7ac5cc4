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

#include "slumkit/slumkit.h"

#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "slumkit/change.h"
#include "slumkit/dataset.h"
#include "slumkit/error.h"
#include "slumkit/geometry.h"
#include "slumkit/image.h"
#include "slumkit/losses.h"
#include "slumkit/metrics.h"
#include "slumkit/pipeline.h"
#include "slumkit/synth.h"
#include "slumkit/transforms.h"

struct sk_mask {
  slumkit::RasterMask mask;
};

struct sk_dataset {
  slumkit::Dataset ds;
};

struct sk_predictions {
  std::vector<slumkit::Detection> detections;
};

struct sk_eval_report {
  slumkit::EvalReport report;
};

struct sk_change_result {
  slumkit::ChangeResult result;
};

namespace {

thread_local std::string g_last_error;

sk_status Fail(sk_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `fn`, mapping exceptions onto status codes.
template <typename Fn>
sk_status Guard(Fn&& fn) {
  try {
    fn();
    return SK_OK;
  } catch (const slumkit::Error& e) {
    return Fail(static_cast<sk_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(SK_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(SK_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(SK_ERR_INTERNAL, "unknown exception");
  }
}

void Require(bool ok, const char* what) {
  if (!ok) {
    throw slumkit::Error(slumkit::ErrorCode::kInvalidArgument, what);
  }
}

slumkit::RoISample ToSample(const sk_roi_sample* s) {
  Require(s != nullptr, "sample is NULL");
  Require(s->num_classes >= 1 && s->mask_size >= 1,
          "num_classes and mask_size must be positive");
  Require(s->class_logits && s->box_deltas && s->box_targets &&
              s->mask_probs && s->gt_mask,
          "sample arrays must not be NULL");
  const size_t k = static_cast<size_t>(s->num_classes);
  const size_t mm = static_cast<size_t>(s->mask_size) * s->mask_size;
  slumkit::RoISample out;
  out.num_classes = s->num_classes;
  out.mask_size = s->mask_size;
  out.class_logits.assign(s->class_logits, s->class_logits + k + 1);
  out.box_deltas.assign(s->box_deltas, s->box_deltas + 4 * k);
  std::memcpy(out.box_targets.data(), s->box_targets, 4 * sizeof(double));
  out.mask_probs.assign(s->mask_probs, s->mask_probs + k * mm);
  out.gt_class = s->gt_class;
  out.gt_mask.assign(s->gt_mask, s->gt_mask + mm);
  return out;
}

slumkit::LossKind ToKind(sk_loss_kind kind) {
  switch (kind) {
    case SK_LOSS_CLS:
      return slumkit::LossKind::kClassification;
    case SK_LOSS_BOX:
      return slumkit::LossKind::kBox;
    case SK_LOSS_MASK:
      return slumkit::LossKind::kMask;
  }
  throw slumkit::Error(slumkit::ErrorCode::kInvalidArgument,
                       "unknown loss kind");
}

sk_loss_kind FromKind(slumkit::LossKind kind) {
  switch (kind) {
    case slumkit::LossKind::kClassification:
      return SK_LOSS_CLS;
    case slumkit::LossKind::kBox:
      return SK_LOSS_BOX;
    case slumkit::LossKind::kMask:
      return SK_LOSS_MASK;
  }
  return SK_LOSS_CLS;
}

}  // namespace

extern "C" {

const char* sk_version(void) { return "0.1.0"; }

const char* sk_status_name(sk_status status) {
  if (status == SK_OK) return "OK";
  if (status == SK_ERR_INTERNAL) return "Internal";
  if (status >= SK_ERR_INVALID_ARGUMENT && status <= SK_ERR_IO) {
    return slumkit::ErrorCodeName(static_cast<slumkit::ErrorCode>(status));
  }
  return "Unknown";
}

const char* sk_last_error_message(void) { return g_last_error.c_str(); }

// ---- Masks -----------------------------------------------------------------

sk_status sk_mask_create(int32_t width, int32_t height, const uint8_t* bits,
                         sk_mask** out) {
  return Guard([&] {
    Require(out != nullptr, "out is NULL");
    slumkit::RasterMask m(width, height);
    if (bits != nullptr) {
      auto dst = m.mutable_bits();
      for (size_t i = 0; i < dst.size(); ++i) dst[i] = bits[i] ? 1 : 0;
    }
    *out = new sk_mask{std::move(m)};
  });
}

void sk_mask_free(sk_mask* mask) { delete mask; }

sk_status sk_mask_dims(const sk_mask* mask, int32_t* width, int32_t* height) {
  return Guard([&] {
    Require(mask && width && height, "NULL argument");
    *width = mask->mask.width();
    *height = mask->mask.height();
  });
}

sk_status sk_mask_copy_bits(const sk_mask* mask, uint8_t* out, size_t len) {
  return Guard([&] {
    Require(mask && out, "NULL argument");
    const auto bits = mask->mask.bits();
    Require(len >= bits.size(), "output buffer too small");
    std::memcpy(out, bits.data(), bits.size());
  });
}

sk_status sk_mask_area(const sk_mask* mask, uint64_t* area) {
  return Guard([&] {
    Require(mask && area, "NULL argument");
    *area = slumkit::MaskArea(mask->mask);
  });
}

sk_status sk_mask_bounding_box(const sk_mask* mask, sk_pixel_box* box) {
  return Guard([&] {
    Require(mask && box, "NULL argument");
    const slumkit::PixelBox b = slumkit::BoundingBox(mask->mask);
    *box = {b.x_min, b.y_min, b.x_max, b.y_max};
  });
}

sk_status sk_mask_combine(const sk_mask* a, const sk_mask* b, sk_combine_op op,
                          sk_mask** out) {
  return Guard([&] {
    Require(a && b && out, "NULL argument");
    slumkit::CombineOp cop;
    switch (op) {
      case SK_COMBINE_UNION:
        cop = slumkit::CombineOp::kUnion;
        break;
      case SK_COMBINE_INTERSECTION:
        cop = slumkit::CombineOp::kIntersection;
        break;
      case SK_COMBINE_DIFFERENCE:
        cop = slumkit::CombineOp::kDifference;
        break;
      default:
        throw slumkit::Error(slumkit::ErrorCode::kInvalidArgument,
                             "unknown combine op");
    }
    *out = new sk_mask{slumkit::CombineMasks(a->mask, b->mask, cop)};
  });
}

sk_status sk_mask_iou(const sk_mask* a, const sk_mask* b, double* iou) {
  return Guard([&] {
    Require(a && b && iou, "NULL argument");
    *iou = slumkit::PairwiseIou(a->mask, b->mask);
  });
}

sk_status sk_mask_write_png(const sk_mask* mask, const char* path) {
  return Guard([&] {
    Require(mask && path, "NULL argument");
    slumkit::WriteMaskPng(mask->mask, path);
  });
}

sk_status sk_rasterize_polygon(const double* xy, size_t n_vertices,
                               int32_t width, int32_t height, sk_mask** out) {
  return Guard([&] {
    Require(out != nullptr, "out is NULL");
    Require(xy != nullptr || n_vertices == 0, "xy is NULL");
    std::vector<slumkit::Point> pts(n_vertices);
    for (size_t i = 0; i < n_vertices; ++i) pts[i] = {xy[2 * i], xy[2 * i + 1]};
    *out = new sk_mask{slumkit::RasterizePolygon(pts, width, height)};
  });
}

sk_status sk_rle_encode(const sk_mask* mask, uint32_t* runs, size_t capacity,
                        size_t* n_runs) {
  return Guard([&] {
    Require(mask && n_runs, "NULL argument");
    const slumkit::RleMask rle = slumkit::RleEncode(mask->mask);
    if (runs != nullptr) {
      Require(capacity >= rle.runs.size(), "output buffer too small");
      std::memcpy(runs, rle.runs.data(), rle.runs.size() * sizeof(uint32_t));
    }
    *n_runs = rle.runs.size();
  });
}

sk_status sk_rle_decode(int32_t width, int32_t height, const uint32_t* runs,
                        size_t n_runs, sk_mask** out) {
  return Guard([&] {
    Require(out != nullptr, "out is NULL");
    Require(runs != nullptr || n_runs == 0, "runs is NULL");
    slumkit::RleMask rle{width, height, {}};
    if (n_runs > 0) rle.runs.assign(runs, runs + n_runs);
    *out = new sk_mask{slumkit::RleDecode(rle)};
  });
}

// ---- Datasets --------------------------------------------------------------

sk_status sk_dataset_load(const char* path, sk_dataset** out) {
  return Guard([&] {
    Require(path && out, "NULL argument");
    *out = new sk_dataset{slumkit::LoadDataset(path)};
  });
}

sk_status sk_dataset_save(const sk_dataset* ds, const char* path) {
  return Guard([&] {
    Require(ds && path, "NULL argument");
    slumkit::SaveDataset(ds->ds, path);
  });
}

void sk_dataset_free(sk_dataset* ds) { delete ds; }

sk_status sk_dataset_scene_count(const sk_dataset* ds, size_t* n) {
  return Guard([&] {
    Require(ds && n, "NULL argument");
    *n = ds->ds.scenes.size();
  });
}

sk_status sk_dataset_annotation_count(const sk_dataset* ds, size_t* n) {
  return Guard([&] {
    Require(ds && n, "NULL argument");
    *n = ds->ds.annotations.size();
  });
}

sk_status sk_dataset_scene_id(const sk_dataset* ds, size_t index,
                              const char** id) {
  return Guard([&] {
    Require(ds && id, "NULL argument");
    if (index >= ds->ds.scenes.size()) {
      throw slumkit::Error(slumkit::ErrorCode::kIndexError,
                           "scene index out of range");
    }
    *id = ds->ds.scenes[index].id.c_str();
  });
}

sk_status sk_dataset_scene_dims(const sk_dataset* ds, const char* scene_id,
                                int32_t* width, int32_t* height) {
  return Guard([&] {
    Require(ds && scene_id && width && height, "NULL argument");
    const slumkit::Scene& s = ds->ds.FindScene(scene_id);
    *width = s.width;
    *height = s.height;
  });
}

sk_status sk_dataset_gt_mask(const sk_dataset* ds, size_t annotation_index,
                             sk_mask** out) {
  return Guard([&] {
    Require(ds && out, "NULL argument");
    if (annotation_index >= ds->ds.annotations.size()) {
      throw slumkit::Error(slumkit::ErrorCode::kIndexError,
                           "annotation index out of range");
    }
    const slumkit::InstanceAnnotation& a = ds->ds.annotations[annotation_index];
    const slumkit::Scene& s = ds->ds.FindScene(a.scene_id);
    *out = new sk_mask{slumkit::RasterizePolygon(a.polygon, s.width, s.height)};
  });
}

// ---- Predictions -----------------------------------------------------------

sk_status sk_predictions_load(const char* path, const sk_dataset* ds,
                              sk_predictions** out) {
  return Guard([&] {
    Require(path && out, "NULL argument");
    std::vector<slumkit::Detection> dets =
        ds ? slumkit::LoadPredictions(path, ds->ds)
           : slumkit::LoadPredictionsUnbound(path);
    *out = new sk_predictions{std::move(dets)};
  });
}

sk_status sk_predictions_from_gt(const sk_dataset* ds, double score,
                                 sk_predictions** out) {
  return Guard([&] {
    Require(ds && out, "NULL argument");
    *out = new sk_predictions{slumkit::GtAsDetections(ds->ds, score)};
  });
}

sk_status sk_predictions_save(const sk_predictions* preds, const char* path) {
  return Guard([&] {
    Require(preds && path, "NULL argument");
    slumkit::SavePredictions(preds->detections, path);
  });
}

sk_status sk_predictions_count(const sk_predictions* preds, size_t* n) {
  return Guard([&] {
    Require(preds && n, "NULL argument");
    *n = preds->detections.size();
  });
}

void sk_predictions_free(sk_predictions* preds) { delete preds; }

// ---- Evaluation ------------------------------------------------------------

void sk_eval_options_init(sk_eval_options* options) {
  if (options == nullptr) return;
  options->iou_threshold = 0.5;
  options->score_floor = 0.5;
  options->jobs = 1;
}

sk_status sk_evaluate(const sk_dataset* ds, const sk_predictions* preds,
                      const sk_eval_options* options, sk_eval_report** out) {
  return Guard([&] {
    Require(ds && preds && out, "NULL argument");
    slumkit::EvalOptions opts;
    if (options != nullptr) {
      opts.iou_threshold = options->iou_threshold;
      opts.score_floor = options->score_floor;
      opts.jobs = options->jobs;
    }
    *out = new sk_eval_report{slumkit::Evaluate(ds->ds, preds->detections, opts)};
  });
}

sk_status sk_eval_report_summary(const sk_eval_report* report,
                                 sk_eval_summary* summary) {
  return Guard([&] {
    Require(report && summary, "NULL argument");
    const slumkit::EvalReport& r = report->report;
    summary->ap50 = r.ap50;
    summary->union_iou = r.union_iou;
    summary->mean_matched_iou = r.mean_matched_iou;
    summary->tp = r.tp;
    summary->fp = r.fp;
    summary->fn = r.fn;
    summary->total_gt = r.total_gt;
  });
}

sk_status sk_eval_report_write_json(const sk_eval_report* report,
                                    const char* path) {
  return Guard([&] {
    Require(report && path, "NULL argument");
    slumkit::WriteTextFile(path, slumkit::EvalReportToJson(report->report));
  });
}

sk_status sk_eval_report_write_csv(const sk_eval_report* report,
                                   const char* path) {
  return Guard([&] {
    Require(report && path, "NULL argument");
    slumkit::WriteTextFile(path, slumkit::EvalReportToCsv(report->report));
  });
}

sk_status sk_eval_report_write_pr_csv(const sk_eval_report* report,
                                      const char* path) {
  return Guard([&] {
    Require(report && path, "NULL argument");
    slumkit::WriteTextFile(path, slumkit::PrCurveToCsv(report->report.curve));
  });
}

void sk_eval_report_free(sk_eval_report* report) { delete report; }

// ---- Change detection ------------------------------------------------------

sk_status sk_load_scene_union(const char* path, const char* scene_id,
                              double score_floor, int32_t width,
                              int32_t height, sk_mask** out) {
  return Guard([&] {
    Require(path && scene_id && out, "NULL argument");
    std::optional<std::pair<int, int>> dims;
    if (width > 0 && height > 0) dims = std::pair<int, int>(width, height);
    *out = new sk_mask{
        slumkit::LoadSceneUnion(path, scene_id, score_floor, dims)};
  });
}

sk_status sk_detect_change(const sk_mask* before, const sk_mask* after,
                           sk_change_result** out) {
  return Guard([&] {
    Require(before && after && out, "NULL argument");
    *out = new sk_change_result{slumkit::DetectChange(before->mask, after->mask)};
  });
}

sk_status sk_change_summary_get(const sk_change_result* result,
                                sk_change_summary* summary) {
  return Guard([&] {
    Require(result && summary, "NULL argument");
    const slumkit::ChangeResult& r = result->result;
    summary->before_px = r.area_before;
    summary->after_px = r.area_after;
    summary->stable_px = r.change_map.Count(slumkit::ChangeLabel::kStable);
    summary->added_px = r.change_map.Count(slumkit::ChangeLabel::kAdded);
    summary->removed_px = r.change_map.Count(slumkit::ChangeLabel::kRemoved);
    summary->has_percent = r.percent_change.has_value() ? 1 : 0;
    summary->percent = r.percent_change.value_or(0.0);
    switch (r.status) {
      case slumkit::ChangeStatus::kChanged:
        summary->status = SK_CHANGE_CHANGED;
        break;
      case slumkit::ChangeStatus::kNoSlumEither:
        summary->status = SK_CHANGE_NO_SLUM_EITHER;
        break;
      case slumkit::ChangeStatus::kNewSettlement:
        summary->status = SK_CHANGE_NEW_SETTLEMENT;
        break;
    }
  });
}

sk_status sk_change_write_json(const sk_change_result* result,
                               const char* path) {
  return Guard([&] {
    Require(result && path, "NULL argument");
    slumkit::WriteTextFile(path, slumkit::ChangeResultToJson(result->result));
  });
}

sk_status sk_change_write_map_png(const sk_change_result* result,
                                  const char* path) {
  return Guard([&] {
    Require(result && path, "NULL argument");
    slumkit::WriteChangeMapPng(result->result.change_map, path);
  });
}

void sk_change_result_free(sk_change_result* result) { delete result; }

// ---- Losses ----------------------------------------------------------------

sk_status sk_mask_loss(const sk_roi_sample* sample, double* value,
                       double* gradient) {
  return Guard([&] {
    Require(value != nullptr, "value is NULL");
    const slumkit::LossValue lv = slumkit::MaskLoss(ToSample(sample));
    if (gradient != nullptr) {
      std::memcpy(gradient, lv.gradient.data(),
                  lv.gradient.size() * sizeof(double));
    }
    *value = lv.value;
  });
}

sk_status sk_cls_loss(const double* logits, size_t n, int32_t gt_class,
                      double* value, double* gradient) {
  return Guard([&] {
    Require(logits && value, "NULL argument");
    const slumkit::LossValue lv =
        slumkit::ClsLoss(std::span<const double>(logits, n), gt_class);
    if (gradient != nullptr) {
      std::memcpy(gradient, lv.gradient.data(), n * sizeof(double));
    }
    *value = lv.value;
  });
}

sk_status sk_box_loss(const double* pred, const double* target, double* value,
                      double* gradient) {
  return Guard([&] {
    Require(pred && target && value, "NULL argument");
    const slumkit::LossValue lv =
        slumkit::BoxLoss(std::span<const double, 4>(pred, 4),
                         std::span<const double, 4>(target, 4));
    if (gradient != nullptr) {
      std::memcpy(gradient, lv.gradient.data(), 4 * sizeof(double));
    }
    *value = lv.value;
  });
}

sk_status sk_total_loss(const sk_roi_sample* sample, sk_loss_breakdown* out) {
  return Guard([&] {
    Require(out != nullptr, "out is NULL");
    const slumkit::LossBreakdown b = slumkit::TotalLoss(ToSample(sample));
    *out = {b.l_cls, b.l_box, b.l_mask, b.total};
  });
}

sk_status sk_gradcheck(sk_loss_kind kind, const sk_roi_sample* sample,
                       double step, double* max_rel_error) {
  return Guard([&] {
    Require(max_rel_error != nullptr, "max_rel_error is NULL");
    *max_rel_error = slumkit::GradCheck(ToKind(kind), ToSample(sample), step);
  });
}

sk_status sk_losscheck(int32_t trials, uint64_t seed, sk_losscheck_row rows[3]) {
  return Guard([&] {
    Require(rows != nullptr, "rows is NULL");
    Require(trials > 0, "trials must be positive");
    const std::vector<slumkit::LossCheckRow> result =
        slumkit::RunLossCheck(trials, seed);
    for (size_t i = 0; i < 3 && i < result.size(); ++i) {
      const slumkit::LossCheckRow& r = result[i];
      rows[i] = {FromKind(r.kind), r.trials, r.max_rel_error, r.tolerance,
                 r.passed ? 1 : 0};
    }
  });
}

// ---- Preprocessing and workflows -------------------------------------------

sk_status sk_resize_pad_plan_get(int32_t width, int32_t height, int32_t target,
                                 sk_resize_pad_plan* plan) {
  return Guard([&] {
    Require(plan != nullptr, "plan is NULL");
    const slumkit::ResizePadPlan p = slumkit::PlanResizePad(width, height, target);
    *plan = {p.scale_factor, p.content_width, p.content_height, p.pad_left,
             p.pad_top};
  });
}

sk_status sk_rasterize_dataset(const char* dataset_path, const char* out_dir,
                               size_t* n_written) {
  return Guard([&] {
    Require(dataset_path && out_dir, "NULL argument");
    const size_t n = slumkit::RasterizeDatasetFile(dataset_path, out_dir);
    if (n_written != nullptr) *n_written = n;
  });
}

sk_status sk_augment_dataset(const char* dataset_path, const char* config_path,
                             uint64_t seed, const char* out_dir,
                             int32_t resize_pad, int32_t jobs) {
  return Guard([&] {
    Require(dataset_path && out_dir, "NULL argument");
    slumkit::AugmentJob job;
    job.dataset_path = dataset_path;
    if (config_path != nullptr) {
      job.config =
          slumkit::ParseAugmentConfig(slumkit::ReadTextFile(config_path));
    }
    job.seed = seed;
    job.out_dir = out_dir;
    job.resize_pad = resize_pad != 0;
    job.jobs = jobs;
    slumkit::AugmentDatasetFile(job);
  });
}

sk_status sk_synth_corpus(const char* config_path, uint64_t seed,
                          const char* out_dir) {
  return Guard([&] {
    Require(out_dir != nullptr, "out_dir is NULL");
    slumkit::SynthConfig cfg;
    if (config_path != nullptr) {
      cfg = slumkit::ParseSynthConfig(slumkit::ReadTextFile(config_path));
    }
    slumkit::WriteSynthCorpus(cfg, seed, out_dir);
  });
}

}  // extern "C"
