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

#include "audiovmaf/composer.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace audiovmaf {

void ComposerConfig::validate() const {
  if (columns_per_frame < 1) throw Error("columns_per_frame must be >= 1");
  if (image_height < 1 || image_width < 1) {
    throw Error("image dimensions must be positive");
  }
  if (!(dynamic_range_db > 0.0)) {
    throw Error("dynamic_range_db must be positive");
  }
}

const std::array<Rgb, 256>& hsv_lut() {
  static const std::array<Rgb, 256> lut = [] {
    std::array<Rgb, 256> t{};
    for (int i = 0; i < 256; ++i) {
      // Hue i/256, saturation 1, value 1: standard sector conversion.
      const double h = 6.0 * i / 256.0;
      const int sector = int(h) % 6;
      const double f = h - std::floor(h);
      const double q = 1.0 - f;
      const double s = f;  // "t" in the usual formula, v*(1-(1-f)*s)
      double r = 0, g = 0, b = 0;
      switch (sector) {
        case 0: r = 1, g = s, b = 0; break;
        case 1: r = q, g = 1, b = 0; break;
        case 2: r = 0, g = 1, b = s; break;
        case 3: r = 0, g = q, b = 1; break;
        case 4: r = s, g = 0, b = 1; break;
        case 5: r = 1, g = 0, b = q; break;
      }
      t[size_t(i)] = {uint8_t(lround(r * 255.0)), uint8_t(lround(g * 255.0)),
                      uint8_t(lround(b * 255.0))};
    }
    return t;
  }();
  return lut;
}

const std::array<Rgb, 256>& grayscale_lut() {
  static const std::array<Rgb, 256> lut = [] {
    std::array<Rgb, 256> t{};
    for (int i = 0; i < 256; ++i) {
      t[size_t(i)] = {uint8_t(i), uint8_t(i), uint8_t(i)};
    }
    return t;
  }();
  return lut;
}

LevelTile assemble_tile(const std::vector<ErbSpectrogram>& specs, int t,
                        const ComposerConfig& cfg) {
  if (specs.empty()) throw Error("no spectrograms to compose");
  const int bands = specs[0].num_bands;
  const int cols = specs[0].num_columns;
  for (const auto& s : specs) {
    if (s.num_bands != bands || s.num_columns != cols) {
      throw Error("channel spectrograms differ in shape");
    }
  }
  if (t < 0 || t >= cols) {
    throw Error("frame out of range: " + std::to_string(t));
  }

  const int w = cfg.columns_per_frame;
  LevelTile tile(int(specs.size()) * bands, w);
  for (size_t s = 0; s < specs.size(); ++s) {
    for (int r = 0; r < bands; ++r) {
      // Row 0 of each signal block is its highest band; frequency
      // increases upward in the rendered image.
      const int band = bands - 1 - r;
      for (int c = 0; c < w; ++c) {
        const int col = t - (w - 1) + c;
        tile.at(int(s) * bands + r, c) =
            col >= 0 ? specs[s].at(band, col) : 0.0;
      }
    }
  }
  return tile;
}

LevelTile replicate(const LevelTile& tile, const ComposerConfig& cfg) {
  cfg.validate();
  if (tile.rows < 1 || tile.cols < 1) throw Error("empty tile");
  if (cfg.image_height % tile.rows != 0 || cfg.image_width % tile.cols != 0) {
    throw Error("tile does not tile image: " + std::to_string(tile.rows) +
                "x" + std::to_string(tile.cols) + " vs " +
                std::to_string(cfg.image_height) + "x" +
                std::to_string(cfg.image_width));
  }
  LevelTile image(cfg.image_height, cfg.image_width);
  if (cfg.replication) {
    for (int r = 0; r < cfg.image_height; ++r) {
      for (int c = 0; c < cfg.image_width; ++c) {
        image.at(r, c) = tile.at(r % tile.rows, c % tile.cols);
      }
    }
  } else {
    for (int r = 0; r < tile.rows; ++r) {
      for (int c = 0; c < tile.cols; ++c) {
        image.at(r, c) = tile.at(r, c);
      }
    }
  }
  return image;
}

std::vector<uint8_t> quantize_db(const LevelTile& levels,
                                 const ComposerConfig& cfg) {
  const double floor_db = cfg.db_ceiling - cfg.dynamic_range_db;
  std::vector<uint8_t> out(levels.v.size());
  for (size_t i = 0; i < levels.v.size(); ++i) {
    const double level = levels.v[i];
    if (level == 0.0) {  // gated
      out[i] = 0;
      continue;
    }
    const double q =
        std::round(255.0 * (level - floor_db) / cfg.dynamic_range_db);
    out[i] = uint8_t(std::clamp(q, 0.0, 255.0));
  }
  return out;
}

ComposedFrame compose_frame(const std::vector<ErbSpectrogram>& specs, int t,
                            const ComposerConfig& cfg) {
  const LevelTile tile = assemble_tile(specs, t, cfg);
  const LevelTile image = replicate(tile, cfg);
  const std::vector<uint8_t> idx = quantize_db(image, cfg);
  const auto& lut =
      cfg.colormap == Colormap::kHsv ? hsv_lut() : grayscale_lut();

  ComposedFrame frame;
  frame.frame_index = t;
  frame.width = cfg.image_width;
  frame.height = cfg.image_height;
  frame.rgb.resize(idx.size() * 3);
  for (size_t i = 0; i < idx.size(); ++i) {
    const Rgb& rgb = lut[idx[i]];
    frame.rgb[i * 3 + 0] = rgb[0];
    frame.rgb[i * 3 + 1] = rgb[1];
    frame.rgb[i * 3 + 2] = rgb[2];
  }
  return frame;
}

void for_each_frame(const std::vector<ErbSpectrogram>& specs,
                    const ComposerConfig& cfg,
                    const std::function<void(const ComposedFrame&)>& fn) {
  if (specs.empty()) throw Error("no spectrograms to compose");
  for (int t = 0; t < specs[0].num_columns; ++t) {
    fn(compose_frame(specs, t, cfg));
  }
}

std::vector<ComposedFrame> compose_stream(
    const std::vector<ErbSpectrogram>& specs, const ComposerConfig& cfg) {
  std::vector<ComposedFrame> frames;
  frames.reserve(specs.empty() ? 0 : size_t(specs[0].num_columns));
  for_each_frame(specs, cfg,
                 [&](const ComposedFrame& f) { frames.push_back(f); });
  return frames;
}

ComposerConfig parse_composer_config_file(const std::string& path,
                                          const ComposerConfig& base) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file: " + path);
  ComposerConfig cfg = base;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) {
        throw Error("config line " + std::to_string(line_no) +
                    ": expected key = value");
      }
      continue;
    }
    auto trim = [](std::string s) {
      const size_t a = s.find_first_not_of(" \t\r");
      const size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "columns_per_frame") {
        cfg.columns_per_frame = std::stoi(value);
      } else if (key == "image_height") {
        cfg.image_height = std::stoi(value);
      } else if (key == "image_width") {
        cfg.image_width = std::stoi(value);
      } else if (key == "dynamic_range_db") {
        cfg.dynamic_range_db = std::stod(value);
      } else if (key == "replication") {
        cfg.replication = value == "on" || value == "true" || value == "1";
      } else if (key == "colormap") {
        if (value == "hsv") {
          cfg.colormap = Colormap::kHsv;
        } else if (value == "grayscale") {
          cfg.colormap = Colormap::kGrayscale;
        } else {
          throw Error("unknown colormap '" + value + "'");
        }
      } else if (key == "db_ceiling") {
        cfg.db_ceiling = std::stod(value);
      } else {
        throw Error("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw Error("config line " + std::to_string(line_no) +
                  ": bad value for " + key);
    }
  }
  cfg.validate();
  return cfg;
}

}  // namespace audiovmaf
