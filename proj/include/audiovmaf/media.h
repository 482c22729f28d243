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

#ifndef AUDIOVMAF_MEDIA_H_
#define AUDIOVMAF_MEDIA_H_

#include <string>
#include <vector>

#include "audiovmaf/audio.h"

namespace audiovmaf {

struct ExtractOptions {
  // External demuxer/decoder for non-WAV containers, invoked as a
  // subprocess with ffmpeg-style arguments.
  std::string media_tool = "ffmpeg";
  bool log_commands = false;
  // Every external command line issued is appended here (reproducibility).
  std::vector<std::string>* command_log = nullptr;
};

// Decodes the first audio stream of `container_path` to PCM at
// target_rate, normalized to [-1, 1]; stereo stays two channels. WAV is
// read natively; anything else goes through the external media tool and
// failures carry that tool's diagnostics.
AudioBuffer extract_audio(const std::string& container_path, int target_rate,
                          const ExtractOptions& opt = {});

}  // namespace audiovmaf

#endif  // AUDIOVMAF_MEDIA_H_
