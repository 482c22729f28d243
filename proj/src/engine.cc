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

#include "audiovmaf/engine.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "audiovmaf/audio.h"
#include "audiovmaf/subprocess.h"
#include "audiovmaf/video.h"

namespace audiovmaf {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// The stock release model shipped with vmaf builds.
constexpr const char* kDefaultVmafModelId = "vmaf_v0.6.1";

EngineKind kind_from_basename(const std::string& path) {
  const std::string base = fs::path(path).filename().string();
  return base.find("ffmpeg") != std::string::npos ? EngineKind::kFfmpeg
                                                  : EngineKind::kVmafCli;
}

std::string engine_version_of(const std::string& path, EngineKind kind) {
  try {
    const std::vector<std::string> argv =
        kind == EngineKind::kFfmpeg
            ? std::vector<std::string>{path, "-version"}
            : std::vector<std::string>{path, "--version"};
    SubprocessResult res = run_subprocess(argv);
    std::string text =
        !res.stdout_text.empty() ? res.stdout_text : res.stderr_text;
    const size_t nl = text.find('\n');
    if (nl != std::string::npos) text.resize(nl);
    return text.empty() ? "unknown" : text;
  } catch (const Error&) {
    return "unknown";
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read engine report: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

EngineSpec resolve_engine(const EngineSpec& requested,
                          const std::string& self_exe_dir) {
  EngineSpec spec = requested;
  if (spec.model_path.empty()) {
    if (const char* model = std::getenv(kModelEnvVar)) spec.model_path = model;
  }
  if (spec.path.empty()) {
    if (const char* env = std::getenv(kEngineEnvVar)) spec.path = env;
  }
  if (spec.path.empty()) {
    for (const char* candidate : {"vmaf", "ffmpeg"}) {
      if (executable_exists(candidate)) {
        spec.path = candidate;
        break;
      }
    }
  }
  if (spec.path.empty() && !self_exe_dir.empty()) {
    const fs::path bundled = fs::path(self_exe_dir) / "frscore";
    if (fs::exists(bundled)) spec.path = bundled.string();
  }
  if (spec.path.empty() || !executable_exists(spec.path)) {
    throw Error(
        "engine not installed: no VMAF engine configured, none found on "
        "PATH (set --engine or " +
        std::string(kEngineEnvVar) + ")");
  }
  if (spec.kind == EngineKind::kAuto) {
    spec.kind = kind_from_basename(spec.path);
  }
  if (!spec.model_path.empty() && !fs::exists(spec.model_path)) {
    throw Error("model missing: " + spec.model_path);
  }
  return spec;
}

VmafResult parse_vmaf_report(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(std::string("unparsable engine report: ") + e.what());
  }
  VmafResult result;
  try {
    if (!root.contains("frames") || !root["frames"].is_array() ||
        root["frames"].empty()) {
      throw Error("unparsable engine report: no frames array");
    }
    for (const auto& frame : root["frames"]) {
      result.per_frame.push_back(frame.at("metrics").at("vmaf").get<double>());
    }
  } catch (const json::exception& e) {
    throw Error(std::string("unparsable engine report: ") + e.what());
  }
  double sum = 0.0;
  for (double v : result.per_frame) sum += v;
  result.pooled = sum / double(result.per_frame.size());
  if (root.contains("model") && root["model"].is_string()) {
    result.model_id = root["model"].get<std::string>();
  }
  return result;
}

VmafResult run_vmaf(const std::string& ref_video, const std::string& deg_video,
                    const EngineSpec& engine, const std::string& work_dir,
                    std::vector<std::string>* command_log) {
  if (!fs::exists(ref_video)) throw Error("missing file: " + ref_video);
  if (!fs::exists(deg_video)) throw Error("missing file: " + deg_video);
  const VideoInfo ref_info = read_video_info(ref_video);
  const VideoInfo deg_info = read_video_info(deg_video);
  if (ref_info.width != deg_info.width || ref_info.height != deg_info.height) {
    throw Error("video dimension mismatch");
  }
  if (ref_info.frame_count != deg_info.frame_count) {
    throw Error("frame-count mismatch: " + std::to_string(ref_info.frame_count) +
                " vs " + std::to_string(deg_info.frame_count));
  }

  const EngineSpec spec = resolve_engine(engine);
  const fs::path report_path = fs::path(work_dir) / "vmaf_report.json";

  std::vector<std::string> argv;
  if (spec.kind == EngineKind::kVmafCli) {
    // Direct engines consume y4m.
    const fs::path ref_y4m = fs::path(work_dir) / "ref.y4m";
    const fs::path deg_y4m = fs::path(work_dir) / "deg.y4m";
    avi_to_y4m(ref_video, ref_y4m.string());
    avi_to_y4m(deg_video, deg_y4m.string());
    argv = {spec.path,       "--reference", ref_y4m.string(),
            "--distorted",   deg_y4m.string(), "--json",
            "--output",      report_path.string()};
    if (!spec.model_path.empty()) {
      argv.push_back("--model");
      argv.push_back("path=" + spec.model_path);
    }
  } else {
    std::string filter = "libvmaf=log_fmt=json:log_path=" +
                         report_path.string();
    if (!spec.model_path.empty()) {
      filter += ":model=path=" + spec.model_path;
    }
    // libvmaf convention: first input distorted, second reference.
    argv = {spec.path, "-nostdin", "-y",  "-i", deg_video, "-i",
            ref_video, "-lavfi",   filter, "-f", "null",    "-"};
  }

  SubprocessResult res = run_subprocess(argv);
  if (command_log) command_log->push_back(res.command_line);
  if (res.exit_code != 0) {
    const std::string diag =
        res.stderr_text.empty() ? res.stdout_text : res.stderr_text;
    throw Error("engine failed (exit " + std::to_string(res.exit_code) +
                "): " + diag);
  }

  VmafResult result = parse_vmaf_report(read_text_file(report_path.string()));
  if (long(result.per_frame.size()) != ref_info.frame_count) {
    throw Error("engine reported " + std::to_string(result.per_frame.size()) +
                " frames for a " + std::to_string(ref_info.frame_count) +
                "-frame stream");
  }
  if (result.model_id.empty()) {
    result.model_id = !spec.model_path.empty()
                          ? fs::path(spec.model_path).filename().string()
                          : kDefaultVmafModelId;
  }
  result.engine_version = engine_version_of(spec.path, spec.kind);
  return result;
}

}  // namespace audiovmaf
