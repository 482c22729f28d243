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

#ifndef AUDIOVMAF_ENGINE_H_
#define AUDIOVMAF_ENGINE_H_

#include <string>
#include <vector>

namespace audiovmaf {

// How the external engine binary is invoked.
enum class EngineKind {
  kAuto,     // decide from the basename ("ffmpeg" => filter invocation)
  kVmafCli,  // vmaf-style CLI: --reference/--distorted y4m + JSON report
  kFfmpeg,   // ffmpeg with the libvmaf filter
};

struct EngineSpec {
  std::string path;  // binary; empty means auto-detect
  EngineKind kind = EngineKind::kAuto;
  std::string model_path;  // optional; engine default model otherwise
};

// Environment overrides honored by resolve_engine.
constexpr const char* kEngineEnvVar = "AUDIOVMAF_ENGINE";
constexpr const char* kModelEnvVar = "AUDIOVMAF_VMAF_MODEL";

struct VmafResult {
  std::vector<double> per_frame;
  double pooled = 0.0;  // arithmetic mean of per_frame
  std::string model_id;
  std::string engine_version;
};

// Fills in defaults: explicit spec > AUDIOVMAF_ENGINE > `vmaf` on PATH >
// `ffmpeg` on PATH > a frscore binary next to the current executable.
// Errors with "engine not installed" when nothing is found.
EngineSpec resolve_engine(const EngineSpec& requested,
                          const std::string& self_exe_dir = "");

// Scores deg_video against ref_video with the external engine. Frame
// counts and dimensions are checked before the engine launches. The
// pooled value is the arithmetic mean of the parsed per-frame scores.
VmafResult run_vmaf(const std::string& ref_video, const std::string& deg_video,
                    const EngineSpec& engine, const std::string& work_dir,
                    std::vector<std::string>* command_log = nullptr);

// Parses a vmaf-style JSON report (frames[].metrics.vmaf). Exposed for
// tests and for the ffmpeg log path, which emits the same layout.
VmafResult parse_vmaf_report(const std::string& json_text);

}  // namespace audiovmaf

#endif  // AUDIOVMAF_ENGINE_H_
