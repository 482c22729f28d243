// Copyright 2026 The AudioVMAF Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// frscore: a small full-reference video scorer with a vmaf-compatible
// command line and report layout. Per frame it computes mean 8x8 box SSIM
// on luma and maps it to 0..100; frames are pooled by arithmetic mean.
// It exists so the scoring pipeline stays runnable on machines without a
// VMAF engine; its scores are not VMAF scores.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "audiovmaf/audio.h"
#include "audiovmaf/ssim2d.h"
#include "audiovmaf/video.h"

namespace {

constexpr const char* kVersion = "frscore 1.0.0";
constexpr const char* kMetricId = "luma_box_ssim_mean_v1";

int run(const std::string& ref_path, const std::string& deg_path,
        const std::string& output_path, const std::string& model) {
  using audiovmaf::LumaVideoReader;

  LumaVideoReader ref(ref_path);
  LumaVideoReader deg(deg_path);
  if (ref.info().width != deg.info().width ||
      ref.info().height != deg.info().height) {
    std::fprintf(stderr, "frscore: video dimensions differ\n");
    return 1;
  }

  std::vector<double> scores;
  std::vector<uint8_t> ref_luma, deg_luma;
  for (;;) {
    const bool got_ref = ref.read_luma(ref_luma);
    const bool got_deg = deg.read_luma(deg_luma);
    if (got_ref != got_deg) {
      std::fprintf(stderr, "frscore: frame counts differ\n");
      return 1;
    }
    if (!got_ref) break;
    const double ssim = audiovmaf::luma_ssim(ref_luma, deg_luma,
                                             ref.info().width,
                                             ref.info().height);
    scores.push_back(100.0 * std::max(0.0, ssim));
  }
  if (scores.empty()) {
    std::fprintf(stderr, "frscore: no frames\n");
    return 1;
  }

  double sum = 0.0, lo = scores[0], hi = scores[0];
  for (double s : scores) {
    sum += s;
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }

  nlohmann::ordered_json report;
  report["version"] = kVersion;
  report["model"] = model.empty() ? kMetricId : model;
  report["fps"] = ref.info().fps;
  auto& frames = report["frames"];
  frames = nlohmann::ordered_json::array();
  for (size_t i = 0; i < scores.size(); ++i) {
    frames.push_back({{"frameNum", i}, {"metrics", {{"vmaf", scores[i]}}}});
  }
  report["pooled_metrics"]["vmaf"] = {{"mean", sum / double(scores.size())},
                                      {"min", lo},
                                      {"max", hi}};

  const std::string text = report.dump(2) + "\n";
  if (output_path.empty() || output_path == "-") {
    std::fputs(text.c_str(), stdout);
  } else {
    std::ofstream out(output_path, std::ios::binary);
    if (!out) {
      std::fprintf(stderr, "frscore: cannot write %s\n", output_path.c_str());
      return 1;
    }
    out << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"full-reference frame scorer (vmaf-compatible CLI)"};
  std::string ref_path, deg_path, output_path, model;
  bool json_flag = false;
  app.add_option("-r,--reference", ref_path, "reference video (y4m or avi)")
      ->required();
  app.add_option("-d,--distorted", deg_path, "distorted video (y4m or avi)")
      ->required();
  app.add_option("-o,--output", output_path, "report path (default stdout)");
  app.add_option("-m,--model", model, "accepted for compatibility; echoed");
  app.add_flag("--json", json_flag, "accepted for compatibility (always JSON)");
  app.set_version_flag("--version", kVersion);
  CLI11_PARSE(app, argc, argv);

  try {
    return run(ref_path, deg_path, output_path, model);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "frscore: %s\n", e.what());
    return 1;
  }
}
