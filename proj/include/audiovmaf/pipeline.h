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

#ifndef AUDIOVMAF_PIPELINE_H_
#define AUDIOVMAF_PIPELINE_H_

#include <string>
#include <vector>

#include "audiovmaf/align.h"
#include "audiovmaf/composer.h"
#include "audiovmaf/engine.h"
#include "audiovmaf/frontend.h"
#include "audiovmaf/media.h"

namespace audiovmaf {

struct PipelineConfig {
  int target_rate = 48000;  // the model is defined at 48 kHz
  double max_lag_s = kDefaultMaxLagS;
  FrontendConfig frontend;
  ComposerConfig composer;
  EngineSpec engine;
  std::string media_tool = "ffmpeg";
  bool keep_intermediates = false;
  // Working directory for videos/reports; a fresh temp dir when empty.
  std::string work_dir;
  bool log_commands = false;
};

struct ScoreResult {
  VmafResult vmaf;
  AlignmentReport alignment;
  long frame_count = 0;
  std::string ref_video_path;  // empty unless keep_intermediates
  std::string deg_video_path;
  std::vector<std::string> external_commands;
};

// Full pipeline: extract -> resample -> align -> per-signal frontend ->
// compose both streams -> lossless videos -> external engine. Errors are
// rethrown with the failing stage as a prefix ("align: silent signal").
ScoreResult audiovmaf_score(const std::string& ref_media,
                            const std::string& coded_media,
                            const PipelineConfig& cfg);

// Same pipeline starting from decoded buffers (fixtures, tests).
ScoreResult audiovmaf_score_buffers(const AudioBuffer& ref,
                                    const AudioBuffer& coded,
                                    const PipelineConfig& cfg);

}  // namespace audiovmaf

#endif  // AUDIOVMAF_PIPELINE_H_
