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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult RunCli(const std::string& args) {
  const std::string cmd =
      std::string("\"") + SLUMKIT_CLI_PATH + "\" " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path TempDir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("slumkit_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void WriteText(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// One 40x40 scene whose detection covers the first `area` pixels.
std::string PrefixPrediction(int area) {
  return R"([{"scene_id": "s", "category": "slum", "score": 1.0,
             "mask": {"width": 40, "height": 40, "runs": [0, )" +
         std::to_string(area) + ", " + std::to_string(1600 - area) + "]}}]";
}

TEST(CliTest, UsageErrorsExitOne) {
  EXPECT_EQ(RunCli("").exit_code, 1);
  EXPECT_EQ(RunCli("frobnicate").exit_code, 1);
  EXPECT_EQ(RunCli("evaluate --gt x.json").exit_code, 1);
  EXPECT_EQ(RunCli("losscheck --trials notanumber").exit_code, 1);
  EXPECT_EQ(RunCli("--version").exit_code, 0);
  EXPECT_NE(RunCli("--version").out.find("0.1.0"), std::string::npos);
}

TEST(CliTest, MissingInputExitsTwo) {
  fs::path dir = TempDir("missing");
  EXPECT_EQ(RunCli("rasterize --gt " + (dir / "nope.json").string() + " --out " +
                (dir / "m").string())
                .exit_code,
            2);
  EXPECT_EQ(RunCli("evaluate --gt " + (dir / "a.json").string() + " --pred " +
                (dir / "b.json").string() + " --out " + (dir / "r.json").string())
                .exit_code,
            2);
  EXPECT_FALSE(fs::exists(dir / "r.json"));
}

TEST(CliTest, InvalidDataExitsOne) {
  fs::path dir = TempDir("invalid");
  WriteText(dir / "bad.json", "{\"scenes\": [");
  EXPECT_EQ(RunCli("rasterize --gt " + (dir / "bad.json").string() + " --out " +
                (dir / "m").string())
                .exit_code,
            1);
  WriteText(dir / "cfg.json", R"({"texture_contrast": 7})");
  EXPECT_EQ(RunCli("synth --config " + (dir / "cfg.json").string() + " --out " +
                (dir / "o").string())
                .exit_code,
            1);
}

TEST(CliTest, SynthEvaluateRoundTrip) {
  fs::path dir = TempDir("roundtrip");
  WriteText(dir / "cfg.json",
            R"({"width": 96, "height": 80, "instance_radius": [6, 16],
                "n_scenes": 3, "n_pairs": 1})");
  const std::string synth =
      "synth --config " + (dir / "cfg.json").string() + " --seed 11 --out ";
  ASSERT_EQ(RunCli(synth + (dir / "a").string()).exit_code, 0);
  ASSERT_EQ(RunCli(synth + (dir / "b").string()).exit_code, 0);
  EXPECT_EQ(Slurp(dir / "a" / "dataset.json"), Slurp(dir / "b" / "dataset.json"));

  RunResult r = RunCli("evaluate --gt " + (dir / "a" / "dataset.json").string() +
                    " --pred " + (dir / "a" / "predictions_gt.json").string() +
                    " --out " + (dir / "r.json").string() + " --csv " +
                    (dir / "r.csv").string() + " --pr-csv " +
                    (dir / "pr.csv").string());
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("ap50: 100.00"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("union_iou: 1.0000"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("fp: 0"), std::string::npos) << r.out;
  EXPECT_TRUE(fs::exists(dir / "r.csv"));
  EXPECT_TRUE(fs::exists(dir / "pr.csv"));

  RunResult m = RunCli("rasterize --gt " + (dir / "a" / "dataset.json").string() +
                    " --out " + (dir / "masks").string());
  ASSERT_EQ(m.exit_code, 0);
  EXPECT_EQ(m.out.rfind("masks_written: ", 0), 0u) << m.out;
}

TEST(CliTest, ChangeReportsPercent) {
  fs::path dir = TempDir("change");
  WriteText(dir / "before.json", PrefixPrediction(400));
  WriteText(dir / "after.json", PrefixPrediction(541));
  RunResult r = RunCli("change --before " + (dir / "before.json").string() +
                    " --after " + (dir / "after.json").string() +
                    " --scene s --out " + (dir / "c.json").string() + " --map " +
                    (dir / "c.png").string());
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("before_px: 400\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("after_px: 541\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("percent: +35.25\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("status: changed\n"), std::string::npos) << r.out;
  EXPECT_TRUE(fs::exists(dir / "c.png"));
  EXPECT_NE(Slurp(dir / "c.json").find("\"percent\": 35.25"), std::string::npos);

  // No detections of the scene before: the grid comes from the after side.
  WriteText(dir / "empty.json", "[]");
  RunResult fresh = RunCli("change --before " + (dir / "empty.json").string() +
                        " --after " + (dir / "after.json").string() +
                        " --scene s");
  ASSERT_EQ(fresh.exit_code, 0);
  EXPECT_NE(fresh.out.find("percent: n/a\n"), std::string::npos) << fresh.out;
  EXPECT_NE(fresh.out.find("status: new_settlement\n"), std::string::npos);
}

TEST(CliTest, LosscheckPasses) {
  RunResult r = RunCli("losscheck --trials 30 --seed 2");
  EXPECT_EQ(r.exit_code, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
}

TEST(CliTest, JobsFromEnvironment) {
  fs::path dir = TempDir("jobs");
  WriteText(dir / "cfg.json",
            R"({"width": 64, "height": 64, "instance_radius": [5, 12],
                "n_scenes": 2, "n_pairs": 0})");
  ASSERT_EQ(RunCli("synth --config " + (dir / "cfg.json").string() + " --out " +
                (dir / "c").string())
                .exit_code,
            0);
  const std::string eval = "evaluate --gt " + (dir / "c" / "dataset.json").string() +
                           " --pred " +
                           (dir / "c" / "predictions_gt.json").string() + " --out ";
  ASSERT_EQ(RunCli(eval + (dir / "one.json").string()).exit_code, 0);
  const std::string cmd = "SLUMKIT_JOBS=3 \"" + std::string(SLUMKIT_CLI_PATH) +
                          "\" " + eval + (dir / "three.json").string() +
                          " >/dev/null 2>&1";
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_EQ(Slurp(dir / "one.json"), Slurp(dir / "three.json"));
}

}  // namespace
