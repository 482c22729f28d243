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

#ifndef AUDIOVMAF_VIDEO_H_
#define AUDIOVMAF_VIDEO_H_

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

namespace audiovmaf {

struct VideoInfo {
  int width = 0;
  int height = 0;
  int fps = 0;
  long frame_count = 0;
};

// Uncompressed rawvideo RGB24 in an AVI container: mathematically
// lossless and full-range 4:4:4, readable by standard tools. Frames go in
// top-down RGB and come back byte-identical from AviReader.
class AviWriter {
 public:
  AviWriter(const std::string& path, int width, int height, int fps);
  ~AviWriter();
  AviWriter(const AviWriter&) = delete;
  AviWriter& operator=(const AviWriter&) = delete;

  void write_frame(const std::vector<uint8_t>& rgb);
  long frames_written() const { return frames_; }
  // Backpatches headers and the index; errors with "empty stream" if no
  // frame was written. Called by the destructor if still open.
  void close();

 private:
  std::string path_;
  FILE* f_ = nullptr;
  int width_, height_, fps_;
  long frames_ = 0;
  std::vector<uint32_t> frame_sizes_;
  long movi_start_ = 0;
  bool closed_ = false;
};

class AviReader {
 public:
  explicit AviReader(const std::string& path);
  ~AviReader();
  AviReader(const AviReader&) = delete;
  AviReader& operator=(const AviReader&) = delete;

  const VideoInfo& info() const { return info_; }
  // Returns false at end of stream; rgb receives top-down RGB24.
  bool read_frame(std::vector<uint8_t>& rgb);

 private:
  FILE* f_ = nullptr;
  VideoInfo info_;
  long frames_read_ = 0;
};

VideoInfo read_video_info(const std::string& path);

// Converts to YUV4MPEG2 C444 with full-range BT.601 luma/chroma, the
// format direct vmaf-style engines consume. Chroma rounding makes this a
// derivative, not the archival copy.
void avi_to_y4m(const std::string& avi_path, const std::string& y4m_path);

// Reads Y4M (C444 or mono) or our AVI files and yields the luma plane;
// used by the bundled frame scorer.
class LumaVideoReader {
 public:
  explicit LumaVideoReader(const std::string& path);
  ~LumaVideoReader();

  const VideoInfo& info() const;
  bool read_luma(std::vector<uint8_t>& luma);

 private:
  struct Impl;
  Impl* impl_;
};

}  // namespace audiovmaf

#endif  // AUDIOVMAF_VIDEO_H_
