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

// slumkit command-line tool. Links only against the C API.
//
// Exit codes: 0 success, 1 usage or validation failure, 2 I/O failure.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "slumkit/slumkit.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

int ExitCodeFor(sk_status status) {
  if (status == SK_OK) return kExitOk;
  if (status == SK_ERR_IO || status == SK_ERR_IMAGE_LOAD) return kExitIo;
  return kExitValidation;
}

// Prints the pending error and returns the matching exit code.
int Report(sk_status status) {
  std::fprintf(stderr, "error: %s: %s\n", sk_status_name(status),
               sk_last_error_message());
  return ExitCodeFor(status);
}

// Input files must exist before anything is written.
bool InputsExist(const std::vector<std::string>& paths) {
  for (const std::string& p : paths) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(p, ec)) {
      std::fprintf(stderr, "error: IoError: cannot read %s\n", p.c_str());
      return false;
    }
  }
  return true;
}

struct RasterizeArgs {
  std::string gt;
  std::string out;
};

int RunRasterize(const RasterizeArgs& a) {
  if (!InputsExist({a.gt})) return kExitIo;
  size_t n = 0;
  const sk_status s = sk_rasterize_dataset(a.gt.c_str(), a.out.c_str(), &n);
  if (s != SK_OK) return Report(s);
  std::printf("masks_written: %zu\n", n);
  return kExitOk;
}

struct AugmentArgs {
  std::string gt;
  std::string config;
  uint64_t seed = 0;
  std::string out;
  bool resize_pad = false;
  int jobs = 1;
};

int RunAugment(const AugmentArgs& a) {
  std::vector<std::string> inputs = {a.gt};
  if (!a.config.empty()) inputs.push_back(a.config);
  if (!InputsExist(inputs)) return kExitIo;
  const sk_status s = sk_augment_dataset(
      a.gt.c_str(), a.config.empty() ? nullptr : a.config.c_str(), a.seed,
      a.out.c_str(), a.resize_pad ? 1 : 0, a.jobs);
  if (s != SK_OK) return Report(s);
  std::printf("augmented dataset written to %s\n", a.out.c_str());
  return kExitOk;
}

struct EvaluateArgs {
  std::string gt;
  std::string pred;
  double iou_thresh = 0.5;
  double score_floor = 0.5;
  std::string out;
  std::string csv;
  std::string pr_csv;
  int jobs = 1;
};

int RunEvaluate(const EvaluateArgs& a) {
  if (!InputsExist({a.gt, a.pred})) return kExitIo;
  sk_dataset* ds = nullptr;
  sk_predictions* preds = nullptr;
  sk_eval_report* report = nullptr;
  sk_status s = sk_dataset_load(a.gt.c_str(), &ds);
  if (s == SK_OK) s = sk_predictions_load(a.pred.c_str(), ds, &preds);
  if (s == SK_OK) {
    sk_eval_options opts;
    sk_eval_options_init(&opts);
    opts.iou_threshold = a.iou_thresh;
    opts.score_floor = a.score_floor;
    opts.jobs = a.jobs;
    s = sk_evaluate(ds, preds, &opts, &report);
  }
  if (s == SK_OK) s = sk_eval_report_write_json(report, a.out.c_str());
  if (s == SK_OK && !a.csv.empty()) {
    s = sk_eval_report_write_csv(report, a.csv.c_str());
  }
  if (s == SK_OK && !a.pr_csv.empty()) {
    s = sk_eval_report_write_pr_csv(report, a.pr_csv.c_str());
  }
  sk_eval_summary sum{};
  if (s == SK_OK) s = sk_eval_report_summary(report, &sum);
  sk_eval_report_free(report);
  sk_predictions_free(preds);
  sk_dataset_free(ds);
  if (s != SK_OK) return Report(s);

  std::printf("ap50: %.2f\n", sum.ap50);
  std::printf("union_iou: %.4f\n", sum.union_iou);
  std::printf("mean_matched_iou: %.4f\n", sum.mean_matched_iou);
  std::printf("tp: %d\nfp: %d\nfn: %d\n", sum.tp, sum.fp, sum.fn);
  return kExitOk;
}

struct ChangeArgs {
  std::string before;
  std::string after;
  std::string scene;
  double score_floor = 0.5;
  std::string map;
  std::string out;
  int jobs = 1;
};

int RunChange(const ChangeArgs& a) {
  if (!InputsExist({a.before, a.after})) return kExitIo;
  const char* scene = a.scene.c_str();
  sk_mask* before = nullptr;
  sk_mask* after = nullptr;

  // A prediction file without detections of the scene borrows the grid of
  // the other epoch; with neither side known the grid is a single pixel.
  sk_status sb = sk_load_scene_union(a.before.c_str(), scene, a.score_floor, 0,
                                     0, &before);
  sk_status sa = sk_load_scene_union(a.after.c_str(), scene, a.score_floor, 0,
                                     0, &after);
  int32_t w = 1, h = 1;
  if (sb == SK_OK) {
    sk_mask_dims(before, &w, &h);
  } else if (sa == SK_OK) {
    sk_mask_dims(after, &w, &h);
  }
  if (sb == SK_ERR_UNKNOWN_SCENE) {
    sb = sk_load_scene_union(a.before.c_str(), scene, a.score_floor, w, h,
                             &before);
  }
  if (sa == SK_ERR_UNKNOWN_SCENE) {
    sa = sk_load_scene_union(a.after.c_str(), scene, a.score_floor, w, h,
                             &after);
  }
  sk_status s = sb != SK_OK ? sb : sa;
  if (s != SK_OK) {
    const int code = Report(s);
    sk_mask_free(before);
    sk_mask_free(after);
    return code;
  }

  sk_change_result* result = nullptr;
  s = sk_detect_change(before, after, &result);
  if (s == SK_OK && !a.map.empty()) {
    s = sk_change_write_map_png(result, a.map.c_str());
  }
  if (s == SK_OK && !a.out.empty()) {
    s = sk_change_write_json(result, a.out.c_str());
  }
  sk_change_summary sum{};
  if (s == SK_OK) s = sk_change_summary_get(result, &sum);
  sk_change_result_free(result);
  sk_mask_free(before);
  sk_mask_free(after);
  if (s != SK_OK) return Report(s);

  static const char* const kStatus[] = {"changed", "no_slum_either",
                                        "new_settlement"};
  std::printf("scene: %s\n", scene);
  std::printf("before_px: %llu\n",
              static_cast<unsigned long long>(sum.before_px));
  std::printf("after_px: %llu\n", static_cast<unsigned long long>(sum.after_px));
  if (sum.has_percent) {
    std::printf("percent: %+.2f\n", sum.percent);
  } else {
    std::printf("percent: n/a\n");
  }
  std::printf("status: %s\n", kStatus[sum.status]);
  return kExitOk;
}

struct SynthArgs {
  std::string config;
  uint64_t seed = 0;
  std::string out;
};

int RunSynth(const SynthArgs& a) {
  if (!a.config.empty() && !InputsExist({a.config})) return kExitIo;
  const sk_status s = sk_synth_corpus(
      a.config.empty() ? nullptr : a.config.c_str(), a.seed, a.out.c_str());
  if (s != SK_OK) return Report(s);
  std::printf("synthetic corpus written to %s\n", a.out.c_str());
  return kExitOk;
}

struct LosscheckArgs {
  int trials = 100;
  uint64_t seed = 0;
};

int RunLosscheck(const LosscheckArgs& a) {
  sk_losscheck_row rows[3];
  const sk_status s = sk_losscheck(a.trials, a.seed, rows);
  if (s != SK_OK) return Report(s);
  static const char* const kNames[] = {"cls", "box", "mask"};
  std::printf("%-6s %7s %14s %10s  %s\n", "loss", "trials", "max_rel_err",
              "tol", "result");
  bool all = true;
  for (const sk_losscheck_row& r : rows) {
    std::printf("%-6s %7d %14.3e %10.1e  %s\n", kNames[r.kind], r.trials,
                r.max_rel_error, r.tolerance, r.passed ? "PASS" : "FAIL");
    all = all && r.passed;
  }
  return all ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"slumkit: slum mapping dataset, metrics and change tools"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(sk_version()));

  auto add_jobs = [](CLI::App* cmd, int& jobs) {
    cmd->add_option("--jobs", jobs, "Worker threads")
        ->envname("SLUMKIT_JOBS")
        ->check(CLI::PositiveNumber);
  };

  RasterizeArgs ra;
  CLI::App* rasterize =
      app.add_subcommand("rasterize", "Write one PNG mask per annotation");
  rasterize->add_option("--gt", ra.gt, "Dataset JSON")->required();
  rasterize->add_option("--out", ra.out, "Output directory")->required();

  AugmentArgs aa;
  CLI::App* augment =
      app.add_subcommand("augment", "Augment images and annotations");
  augment->add_option("--gt", aa.gt, "Dataset JSON")->required();
  augment->add_option("--config", aa.config, "Augmentation config JSON");
  augment->add_option("--seed", aa.seed, "Random seed");
  augment->add_option("--out", aa.out, "Output directory")->required();
  augment->add_flag("--resize-pad", aa.resize_pad,
                    "Letterbox to 1024x1024 before augmenting");
  add_jobs(augment, aa.jobs);

  EvaluateArgs ea;
  CLI::App* evaluate =
      app.add_subcommand("evaluate", "Score predictions against ground truth");
  evaluate->add_option("--gt", ea.gt, "Dataset JSON")->required();
  evaluate->add_option("--pred", ea.pred, "Predictions JSON")->required();
  evaluate->add_option("--iou-thresh", ea.iou_thresh, "Match IoU threshold")
      ->check(CLI::Range(0.0, 1.0));
  evaluate->add_option("--score-floor", ea.score_floor,
                       "Score floor for the union IoU")
      ->check(CLI::Range(0.0, 1.0));
  evaluate->add_option("--out", ea.out, "Report JSON")->required();
  evaluate->add_option("--csv", ea.csv, "Per-scene CSV");
  evaluate->add_option("--pr-csv", ea.pr_csv, "Precision-recall curve CSV");
  add_jobs(evaluate, ea.jobs);

  ChangeArgs ca;
  CLI::App* change =
      app.add_subcommand("change", "Compare a scene between two epochs");
  change->add_option("--before", ca.before, "Earlier dataset or predictions")
      ->required();
  change->add_option("--after", ca.after, "Later dataset or predictions")
      ->required();
  change->add_option("--scene", ca.scene, "Scene id")->required();
  change->add_option("--score-floor", ca.score_floor,
                     "Minimum detection score")
      ->check(CLI::Range(0.0, 1.0));
  change->add_option("--map", ca.map, "Change-map PNG");
  change->add_option("--out", ca.out, "Result JSON");
  add_jobs(change, ca.jobs);

  SynthArgs sa;
  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic corpus");
  synth->add_option("--config", sa.config, "Generator config JSON");
  synth->add_option("--seed", sa.seed, "Random seed");
  synth->add_option("--out", sa.out, "Output directory")->required();

  LosscheckArgs la;
  CLI::App* losscheck = app.add_subcommand(
      "losscheck", "Check loss gradients against finite differences");
  losscheck->add_option("--trials", la.trials, "Random samples per loss")
      ->check(CLI::PositiveNumber);
  losscheck->add_option("--seed", la.seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  if (*rasterize) return RunRasterize(ra);
  if (*augment) return RunAugment(aa);
  if (*evaluate) return RunEvaluate(ea);
  if (*change) return RunChange(ca);
  if (*synth) return RunSynth(sa);
  if (*losscheck) return RunLosscheck(la);
  return kExitValidation;
}
