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

#include "audiovmaf/pipeline.h"

#include <unistd.h>

#include <filesystem>

#include "audiovmaf/resample.h"
#include "audiovmaf/video.h"

namespace audiovmaf {

namespace fs = std::filesystem;

namespace {

// Scratch directory for videos and engine reports; removed on scope exit
// unless the caller keeps intermediates.
class WorkDir {
 public:
  WorkDir(const std::string& requested, bool keep) : keep_(keep) {
    if (!requested.empty()) {
      path_ = requested;
      fs::create_directories(path_);
      owned_ = false;
      return;
    }
    std::string tmpl =
        (fs::temp_directory_path() / "audiovmaf_XXXXXX").string();
    if (!mkdtemp(tmpl.data())) {
      throw Error("cannot create working directory");
    }
    path_ = tmpl;
  }
  ~WorkDir() {
    if (owned_ && !keep_) {
      std::error_code ec;
      fs::remove_all(path_, ec);
    }
  }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  bool keep_;
  bool owned_ = true;
};

template <typename Fn>
auto stage(const char* name, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(std::string(name) + ": " + e.what());
  }
}

void truncate_to(AudioBuffer& buf, size_t frames) {
  for (auto& ch : buf.samples) ch.resize(frames);
}

long write_stream_video(const std::vector<ErbSpectrogram>& specs,
                        const ComposerConfig& cfg, const std::string& path,
                        int fps) {
  AviWriter writer(path, cfg.image_width, cfg.image_height, fps);
  for_each_frame(specs, cfg, [&](const ComposedFrame& frame) {
    writer.write_frame(frame.rgb);
  });
  writer.close();
  return writer.frames_written();
}

ScoreResult score_pair(const AudioBuffer& ref_in, const AudioBuffer& deg_in,
                       const PipelineConfig& cfg) {
  cfg.frontend.validate(cfg.target_rate);
  cfg.composer.validate();

  ScoreResult result;

  AudioBuffer ref = ref_in;
  AudioBuffer deg = deg_in;
  if (ref.num_channels() != deg.num_channels()) {
    throw Error("channel layout mismatch between reference and coded audio");
  }

  AudioBuffer aligned;
  stage("align", [&] {
    auto [buf, report] = time_align(ref, deg, cfg.max_lag_s);
    aligned = std::move(buf);
    result.alignment = report;
    return 0;
  });
  const size_t common = std::min(ref.num_frames(), aligned.num_frames());
  truncate_to(ref, common);
  truncate_to(aligned, common);

  std::vector<ErbSpectrogram> ref_specs, deg_specs;
  stage("frontend", [&] {
    ref_specs = analyze_buffer(ref, cfg.frontend);
    deg_specs = analyze_buffer(aligned, cfg.frontend);
    return 0;
  });

  WorkDir work(cfg.work_dir, cfg.keep_intermediates);
  const std::string ref_video = (fs::path(work.path()) / "ref.avi").string();
  const std::string deg_video = (fs::path(work.path()) / "deg.avi").string();

  stage("compose", [&] {
    result.frame_count = write_stream_video(ref_specs, cfg.composer,
                                            ref_video, cfg.frontend.fps);
    const long deg_frames = write_stream_video(deg_specs, cfg.composer,
                                               deg_video, cfg.frontend.fps);
    if (deg_frames != result.frame_count) {
      throw Error("reference and coded streams produced different frame "
                  "counts");
    }
    return 0;
  });

  stage("engine", [&] {
    result.vmaf = run_vmaf(ref_video, deg_video, cfg.engine, work.path(),
                           &result.external_commands);
    return 0;
  });

  if (cfg.keep_intermediates) {
    result.ref_video_path = ref_video;
    result.deg_video_path = deg_video;
  }
  return result;
}

}  // namespace

ScoreResult audiovmaf_score_buffers(const AudioBuffer& ref,
                                    const AudioBuffer& coded,
                                    const PipelineConfig& cfg) {
  AudioBuffer r = ref;
  AudioBuffer c = coded;
  if (r.sample_rate != cfg.target_rate) {
    r = stage("resample", [&] { return resample(r, cfg.target_rate); });
  }
  if (c.sample_rate != cfg.target_rate) {
    c = stage("resample", [&] { return resample(c, cfg.target_rate); });
  }
  ScoreResult result = score_pair(r, c, cfg);
  return result;
}

ScoreResult audiovmaf_score(const std::string& ref_media,
                            const std::string& coded_media,
                            const PipelineConfig& cfg) {
  ExtractOptions opt;
  opt.media_tool = cfg.media_tool;
  opt.log_commands = cfg.log_commands;
  std::vector<std::string> commands;
  opt.command_log = &commands;

  const AudioBuffer ref = stage("extract", [&] {
    return extract_audio(ref_media, cfg.target_rate, opt);
  });
  const AudioBuffer coded = stage("extract", [&] {
    return extract_audio(coded_media, cfg.target_rate, opt);
  });

  ScoreResult result = score_pair(ref, coded, cfg);
  result.external_commands.insert(result.external_commands.begin(),
                                  commands.begin(), commands.end());
  return result;
}

}  // namespace audiovmaf
