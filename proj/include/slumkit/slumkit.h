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

/*
 * slumkit C API.
 *
 * Every object is an opaque handle created by an sk_*_create/load/... call
 * and released with the matching sk_*_free (NULL is accepted). Functions
 * return an sk_status; on failure a description of the most recent error on
 * the calling thread is available from sk_last_error_message().
 *
 * Output pointers are written only on success.
 */
#ifndef SLUMKIT_SLUMKIT_H_
#define SLUMKIT_SLUMKIT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SK_API __declspec(dllexport)
#else
#define SK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sk_status {
  SK_OK = 0,
  SK_ERR_INVALID_ARGUMENT = 1,
  SK_ERR_INVALID_POLYGON = 2,
  SK_ERR_MALFORMED_RLE = 3,
  SK_ERR_DIMENSION_MISMATCH = 4,
  SK_ERR_EMPTY_MASK = 5,
  SK_ERR_PARSE = 6,
  SK_ERR_VALIDATION = 7,
  SK_ERR_UNKNOWN_SCENE = 8,
  SK_ERR_IMAGE_LOAD = 9,
  SK_ERR_INVALID_CONFIG = 10,
  SK_ERR_INVALID_PROBABILITY = 11,
  SK_ERR_INDEX = 12,
  SK_ERR_NON_DIFFERENTIABLE = 13,
  SK_ERR_IO = 14,
  SK_ERR_INTERNAL = 99
} sk_status;

SK_API const char* sk_version(void);
SK_API const char* sk_status_name(sk_status status);
/* Thread-local; valid until the next failing call on the same thread. */
SK_API const char* sk_last_error_message(void);

/* ---- Binary masks ------------------------------------------------------ */

typedef struct sk_mask sk_mask;

typedef enum sk_combine_op {
  SK_COMBINE_UNION = 0,
  SK_COMBINE_INTERSECTION = 1,
  SK_COMBINE_DIFFERENCE = 2
} sk_combine_op;

typedef struct sk_pixel_box {
  int32_t x_min, y_min, x_max, y_max; /* inclusive */
} sk_pixel_box;

/* `bits` holds width*height bytes, row-major, non-zero = set; NULL gives an
 * empty mask. */
SK_API sk_status sk_mask_create(int32_t width, int32_t height,
                                const uint8_t* bits, sk_mask** out);
SK_API void sk_mask_free(sk_mask* mask);
SK_API sk_status sk_mask_dims(const sk_mask* mask, int32_t* width,
                              int32_t* height);
/* Copies width*height 0/1 bytes into `out` (capacity `len`). */
SK_API sk_status sk_mask_copy_bits(const sk_mask* mask, uint8_t* out,
                                   size_t len);
SK_API sk_status sk_mask_area(const sk_mask* mask, uint64_t* area);
SK_API sk_status sk_mask_bounding_box(const sk_mask* mask, sk_pixel_box* box);
SK_API sk_status sk_mask_combine(const sk_mask* a, const sk_mask* b,
                                 sk_combine_op op, sk_mask** out);
SK_API sk_status sk_mask_iou(const sk_mask* a, const sk_mask* b, double* iou);
SK_API sk_status sk_mask_write_png(const sk_mask* mask, const char* path);

/* `xy` holds n_vertices interleaved (x, y) pairs. */
SK_API sk_status sk_rasterize_polygon(const double* xy, size_t n_vertices,
                                      int32_t width, int32_t height,
                                      sk_mask** out);

/* Two-call pattern: with runs == NULL only *n_runs is set. */
SK_API sk_status sk_rle_encode(const sk_mask* mask, uint32_t* runs,
                               size_t capacity, size_t* n_runs);
SK_API sk_status sk_rle_decode(int32_t width, int32_t height,
                               const uint32_t* runs, size_t n_runs,
                               sk_mask** out);

/* ---- Datasets and predictions ------------------------------------------ */

typedef struct sk_dataset sk_dataset;
typedef struct sk_predictions sk_predictions;

SK_API sk_status sk_dataset_load(const char* path, sk_dataset** out);
SK_API sk_status sk_dataset_save(const sk_dataset* ds, const char* path);
SK_API void sk_dataset_free(sk_dataset* ds);
SK_API sk_status sk_dataset_scene_count(const sk_dataset* ds, size_t* n);
SK_API sk_status sk_dataset_annotation_count(const sk_dataset* ds, size_t* n);
/* The returned string lives as long as the dataset. */
SK_API sk_status sk_dataset_scene_id(const sk_dataset* ds, size_t index,
                                     const char** id);
SK_API sk_status sk_dataset_scene_dims(const sk_dataset* ds,
                                       const char* scene_id, int32_t* width,
                                       int32_t* height);
/* Rasterized ground truth of one annotation, on its scene's grid. */
SK_API sk_status sk_dataset_gt_mask(const sk_dataset* ds,
                                    size_t annotation_index, sk_mask** out);

/* With ds == NULL detections are validated without scene information. */
SK_API sk_status sk_predictions_load(const char* path, const sk_dataset* ds,
                                     sk_predictions** out);
SK_API sk_status sk_predictions_from_gt(const sk_dataset* ds, double score,
                                        sk_predictions** out);
SK_API sk_status sk_predictions_save(const sk_predictions* preds,
                                     const char* path);
SK_API sk_status sk_predictions_count(const sk_predictions* preds, size_t* n);
SK_API void sk_predictions_free(sk_predictions* preds);

/* ---- Evaluation --------------------------------------------------------- */

typedef struct sk_eval_report sk_eval_report;

typedef struct sk_eval_options {
  double iou_threshold; /* (0, 1], default 0.5 */
  double score_floor;   /* [0, 1], default 0.5; union IoU only */
  int32_t jobs;         /* worker threads, default 1 */
} sk_eval_options;

typedef struct sk_eval_summary {
  double ap50;             /* percent */
  double union_iou;        /* pixel-level */
  double mean_matched_iou; /* over true positives */
  int32_t tp, fp, fn, total_gt;
} sk_eval_summary;

SK_API void sk_eval_options_init(sk_eval_options* options);
SK_API sk_status sk_evaluate(const sk_dataset* ds, const sk_predictions* preds,
                             const sk_eval_options* options,
                             sk_eval_report** out);
SK_API sk_status sk_eval_report_summary(const sk_eval_report* report,
                                        sk_eval_summary* summary);
SK_API sk_status sk_eval_report_write_json(const sk_eval_report* report,
                                           const char* path);
SK_API sk_status sk_eval_report_write_csv(const sk_eval_report* report,
                                          const char* path);
SK_API sk_status sk_eval_report_write_pr_csv(const sk_eval_report* report,
                                             const char* path);
SK_API void sk_eval_report_free(sk_eval_report* report);

/* ---- Change detection --------------------------------------------------- */

typedef struct sk_change_result sk_change_result;

typedef enum sk_change_status {
  SK_CHANGE_CHANGED = 0,
  SK_CHANGE_NO_SLUM_EITHER = 1,
  SK_CHANGE_NEW_SETTLEMENT = 2
} sk_change_status;

typedef struct sk_change_summary {
  uint64_t before_px;
  uint64_t after_px;
  uint64_t stable_px;
  uint64_t added_px;
  uint64_t removed_px;
  double percent;      /* valid only when has_percent != 0 */
  int32_t has_percent;
  sk_change_status status;
} sk_change_summary;

/* Union mask of `scene_id` from a dataset file (ground truth) or prediction
 * file (detections scoring >= score_floor). For a prediction file without
 * detections of the scene, width/height > 0 give the grid; otherwise
 * SK_ERR_UNKNOWN_SCENE. */
SK_API sk_status sk_load_scene_union(const char* path, const char* scene_id,
                                     double score_floor, int32_t width,
                                     int32_t height, sk_mask** out);
SK_API sk_status sk_detect_change(const sk_mask* before, const sk_mask* after,
                                  sk_change_result** out);
SK_API sk_status sk_change_summary_get(const sk_change_result* result,
                                       sk_change_summary* summary);
SK_API sk_status sk_change_write_json(const sk_change_result* result,
                                      const char* path);
SK_API sk_status sk_change_write_map_png(const sk_change_result* result,
                                         const char* path);
SK_API void sk_change_result_free(sk_change_result* result);

/* ---- Loss kernels ------------------------------------------------------- */

/* Array layouts: class_logits[K+1] (0 = background), box_deltas[K*4] (row
 * c-1 for class c), box_targets[4], mask_probs[K*m*m] (channel c-1 for class
 * c), gt_mask[m*m]; gt_class in [1, K]. */
typedef struct sk_roi_sample {
  int32_t num_classes;
  int32_t mask_size;
  const double* class_logits;
  const double* box_deltas;
  const double* box_targets;
  const double* mask_probs;
  int32_t gt_class;
  const uint8_t* gt_mask;
} sk_roi_sample;

typedef struct sk_loss_breakdown {
  double l_cls, l_box, l_mask, total;
} sk_loss_breakdown;

typedef enum sk_loss_kind {
  SK_LOSS_CLS = 0,
  SK_LOSS_BOX = 1,
  SK_LOSS_MASK = 2
} sk_loss_kind;

typedef struct sk_losscheck_row {
  sk_loss_kind kind;
  int32_t trials;
  double max_rel_error;
  double tolerance;
  int32_t passed;
} sk_losscheck_row;

/* `gradient` may be NULL; otherwise it receives K*m*m values. */
SK_API sk_status sk_mask_loss(const sk_roi_sample* sample, double* value,
                              double* gradient);
/* `gradient` may be NULL; otherwise it receives n values. */
SK_API sk_status sk_cls_loss(const double* logits, size_t n, int32_t gt_class,
                             double* value, double* gradient);
/* `gradient` may be NULL; otherwise it receives 4 values. */
SK_API sk_status sk_box_loss(const double* pred, const double* target,
                             double* value, double* gradient);
SK_API sk_status sk_total_loss(const sk_roi_sample* sample,
                               sk_loss_breakdown* out);
SK_API sk_status sk_gradcheck(sk_loss_kind kind, const sk_roi_sample* sample,
                              double step, double* max_rel_error);
/* Fills rows[0..2] (cls, box, mask). */
SK_API sk_status sk_losscheck(int32_t trials, uint64_t seed,
                              sk_losscheck_row rows[3]);

/* ---- Preprocessing and workflows ---------------------------------------- */

typedef struct sk_resize_pad_plan {
  double scale_factor;
  int32_t content_width, content_height;
  int32_t pad_left, pad_top;
} sk_resize_pad_plan;

SK_API sk_status sk_resize_pad_plan_get(int32_t width, int32_t height,
                                        int32_t target,
                                        sk_resize_pad_plan* plan);

/* Writes <out_dir>/<scene_id>_<k>.png per annotation. */
SK_API sk_status sk_rasterize_dataset(const char* dataset_path,
                                      const char* out_dir, size_t* n_written);
/* config_path may be NULL for the default ranges. */
SK_API sk_status sk_augment_dataset(const char* dataset_path,
                                    const char* config_path, uint64_t seed,
                                    const char* out_dir, int32_t resize_pad,
                                    int32_t jobs);
/* config_path may be NULL for the default configuration. */
SK_API sk_status sk_synth_corpus(const char* config_path, uint64_t seed,
                                 const char* out_dir);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* SLUMKIT_SLUMKIT_H_ */
