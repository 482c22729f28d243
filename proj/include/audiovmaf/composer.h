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

#ifndef AUDIOVMAF_COMPOSER_H_
#define AUDIOVMAF_COMPOSER_H_

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "audiovmaf/frontend.h"

namespace audiovmaf {

enum class Colormap { kHsv, kGrayscale };

struct ComposerConfig {
  int columns_per_frame = 32;
  int image_height = 480;
  int image_width = 640;
  double dynamic_range_db = 70.0;
  bool replication = true;
  Colormap colormap = Colormap::kHsv;
  // dB SPL mapped to index 255; the bottom of the range is ceiling - 70.
  double db_ceiling = 110.0;

  void validate() const;
};

// One 480x640 8-bit RGB video frame; every pixel is a colormap LUT entry.
struct ComposedFrame {
  int frame_index = 0;
  int width = 0;
  int height = 0;
  std::vector<uint8_t> rgb;  // 3 bytes per pixel, row-major, top-down
};

// Small dense matrix of band levels used between assembly and quantization.
struct LevelTile {
  int rows = 0;
  int cols = 0;
  std::vector<double> v;

  LevelTile() = default;
  LevelTile(int r, int c) : rows(r), cols(c), v(size_t(r) * c, 0.0) {}
  double& at(int r, int c) { return v[size_t(r) * cols + c]; }
  double at(int r, int c) const { return v[size_t(r) * cols + c]; }
};

using Rgb = std::array<uint8_t, 3>;

// 256-entry colormap: hue i/256, full saturation and value, standard
// HSV->RGB sectors quantized to 8 bit. All entries are distinct.
const std::array<Rgb, 256>& hsv_lut();
const std::array<Rgb, 256>& grayscale_lut();

// Stacks the trailing `columns_per_frame` spectrogram columns of every
// signal (stereo order L, R, M top to bottom). Columns before t=0 are
// zero filled; row 0 of each signal block is its highest band. Errors
// with "frame out of range" past the last column.
LevelTile assemble_tile(const std::vector<ErbSpectrogram>& specs, int t,
                        const ComposerConfig& cfg);

// Tiles the image with copies of `tile` (row-major grid); with
// replication off the tile sits top-left over a level-0 background.
// Errors with "tile does not tile image" when dimensions do not divide.
LevelTile replicate(const LevelTile& tile, const ComposerConfig& cfg);

// index = round(255*(level - (ceiling-range))/range) clipped to [0,255];
// gated cells (level 0) map to 0.
std::vector<uint8_t> quantize_db(const LevelTile& levels,
                                 const ComposerConfig& cfg);

ComposedFrame compose_frame(const std::vector<ErbSpectrogram>& specs, int t,
                            const ComposerConfig& cfg);

// One frame per spectrogram column. The callback form is the streaming
// path used by the video writer; compose_stream materializes the list.
void for_each_frame(const std::vector<ErbSpectrogram>& specs,
                    const ComposerConfig& cfg,
                    const std::function<void(const ComposedFrame&)>& fn);
std::vector<ComposedFrame> compose_stream(
    const std::vector<ErbSpectrogram>& specs, const ComposerConfig& cfg);

// Key/value config file ("key = value", '#' comments) covering every
// ComposerConfig field.
ComposerConfig parse_composer_config_file(const std::string& path,
                                          const ComposerConfig& base = {});

}  // namespace audiovmaf

#endif  // AUDIOVMAF_COMPOSER_H_
