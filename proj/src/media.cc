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

#include "audiovmaf/media.h"

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "audiovmaf/resample.h"
#include "audiovmaf/subprocess.h"
#include "audiovmaf/wav.h"

namespace audiovmaf {

namespace fs = std::filesystem;

namespace {

void log_command(const ExtractOptions& opt, const std::string& line) {
  if (opt.command_log) opt.command_log->push_back(line);
  if (opt.log_commands) std::cerr << "[media] " << line << "\n";
}

AudioBuffer extract_via_tool(const std::string& path,
                             const ExtractOptions& opt) {
  if (!executable_exists(opt.media_tool)) {
    throw Error("media tool '" + opt.media_tool +
                "' not found; non-WAV input needs an external decoder");
  }
  const std::string tmp_wav =
      (fs::temp_directory_path() /
       ("audiovmaf_extract_" + std::to_string(getpid()) + "_" +
        std::to_string(reinterpret_cast<uintptr_t>(&path) & 0xffff) + ".wav"))
          .string();

  // -vn drops video streams; decode the first audio stream to float PCM.
  const std::vector<std::string> argv = {
      opt.media_tool, "-nostdin", "-y",      "-i",         path,
      "-vn",          "-acodec",  "pcm_f32le", tmp_wav};
  SubprocessResult res = run_subprocess(argv);
  log_command(opt, res.command_line);
  if (res.exit_code != 0) {
    std::error_code ec;
    fs::remove(tmp_wav, ec);
    const std::string diag =
        res.stderr_text.empty() ? res.stdout_text : res.stderr_text;
    // ffmpeg reports missing audio as an output-stream mapping failure.
    if (diag.find("does not contain any stream") != std::string::npos ||
        diag.find("no streams") != std::string::npos ||
        diag.find("matches no streams") != std::string::npos) {
      throw Error("no audio stream in " + path + " (" + opt.media_tool +
                  ": " + diag + ")");
    }
    throw Error("decoder failure for " + path + " (" + opt.media_tool +
                " exit " + std::to_string(res.exit_code) + "): " + diag);
  }
  AudioBuffer buf;
  try {
    buf = read_wav(tmp_wav);
  } catch (...) {
    std::error_code ec;
    fs::remove(tmp_wav, ec);
    throw;
  }
  std::error_code ec;
  fs::remove(tmp_wav, ec);
  if (buf.num_frames() == 0) {
    throw Error("no audio stream in " + path);
  }
  return buf;
}

}  // namespace

AudioBuffer extract_audio(const std::string& container_path, int target_rate,
                          const ExtractOptions& opt) {
  if (!fs::exists(container_path)) {
    throw Error("missing file: " + container_path);
  }
  AudioBuffer buf = is_wav_file(container_path)
                        ? read_wav(container_path)
                        : extract_via_tool(container_path, opt);
  if (buf.sample_rate != target_rate) {
    buf = resample(buf, target_rate);
  }
  buf.validate();
  return buf;
}

}  // namespace audiovmaf
