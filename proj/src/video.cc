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

#include "audiovmaf/video.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>

#include "audiovmaf/audio.h"

namespace audiovmaf {

namespace {

constexpr uint32_t kAvifHasIndex = 0x10;
constexpr uint32_t kAviifKeyframe = 0x10;

void w32(FILE* f, uint32_t v) {
  uint8_t b[4] = {uint8_t(v), uint8_t(v >> 8), uint8_t(v >> 16),
                  uint8_t(v >> 24)};
  fwrite(b, 1, 4, f);
}
void w16(FILE* f, uint16_t v) {
  uint8_t b[2] = {uint8_t(v), uint8_t(v >> 8)};
  fwrite(b, 1, 2, f);
}
void wfourcc(FILE* f, const char* cc) { fwrite(cc, 1, 4, f); }

uint32_t r32(FILE* f) {
  uint8_t b[4];
  if (fread(b, 1, 4, f) != 4) throw Error("truncated AVI file");
  return uint32_t(b[0]) | uint32_t(b[1]) << 8 | uint32_t(b[2]) << 16 |
         uint32_t(b[3]) << 24;
}

size_t row_stride(int width) { return (size_t(width) * 3 + 3) & ~size_t(3); }

}  // namespace

AviWriter::AviWriter(const std::string& path, int width, int height, int fps)
    : path_(path), width_(width), height_(height), fps_(fps) {
  if (width < 1 || height < 1 || fps < 1) {
    throw Error("bad video geometry");
  }
  f_ = fopen(path.c_str(), "wb");
  if (!f_) throw Error("cannot create video file: " + path);

  const uint32_t frame_bytes = uint32_t(row_stride(width_) * size_t(height_));

  wfourcc(f_, "RIFF");
  w32(f_, 0);  // patched in close()
  wfourcc(f_, "AVI ");

  wfourcc(f_, "LIST");
  w32(f_, 4 + 8 + 56 + 8 + 4 + 8 + 56 + 8 + 40);  // hdrl payload
  wfourcc(f_, "hdrl");

  wfourcc(f_, "avih");
  w32(f_, 56);
  w32(f_, uint32_t(1000000.0 / fps_ + 0.5));  // usec per frame
  w32(f_, frame_bytes * uint32_t(fps_));      // max bytes/sec
  w32(f_, 0);                                 // padding granularity
  w32(f_, kAvifHasIndex);
  w32(f_, 0);  // total frames, patched
  w32(f_, 0);  // initial frames
  w32(f_, 1);  // streams
  w32(f_, frame_bytes);
  w32(f_, uint32_t(width_));
  w32(f_, uint32_t(height_));
  for (int i = 0; i < 4; ++i) w32(f_, 0);

  wfourcc(f_, "LIST");
  w32(f_, 4 + 8 + 56 + 8 + 40);  // strl payload
  wfourcc(f_, "strl");

  wfourcc(f_, "strh");
  w32(f_, 56);
  wfourcc(f_, "vids");
  wfourcc(f_, "DIB ");
  w32(f_, 0);  // flags
  w16(f_, 0);  // priority
  w16(f_, 0);  // language
  w32(f_, 0);  // initial frames
  w32(f_, 1);  // scale
  w32(f_, uint32_t(fps_));  // rate; fps = rate/scale
  w32(f_, 0);  // start
  w32(f_, 0);  // length (frames), patched
  w32(f_, frame_bytes);
  w32(f_, 0xFFFFFFFF);  // quality
  w32(f_, 0);           // sample size
  w16(f_, 0);
  w16(f_, 0);
  w16(f_, uint16_t(width_));
  w16(f_, uint16_t(height_));

  wfourcc(f_, "strf");
  w32(f_, 40);
  w32(f_, 40);  // biSize
  w32(f_, uint32_t(width_));
  w32(f_, uint32_t(height_));  // positive: bottom-up rows
  w16(f_, 1);                  // planes
  w16(f_, 24);                 // bits per pixel
  w32(f_, 0);                  // BI_RGB, uncompressed
  w32(f_, frame_bytes);
  w32(f_, 0);
  w32(f_, 0);
  w32(f_, 0);
  w32(f_, 0);

  wfourcc(f_, "LIST");
  w32(f_, 0);  // movi payload size, patched
  movi_start_ = ftell(f_);
  wfourcc(f_, "movi");
}

void AviWriter::write_frame(const std::vector<uint8_t>& rgb) {
  if (!f_ || closed_) throw Error("video writer already closed");
  if (rgb.size() != size_t(width_) * size_t(height_) * 3) {
    throw Error("frame size mismatch");
  }
  const size_t stride = row_stride(width_);
  const uint32_t frame_bytes = uint32_t(stride * size_t(height_));
  wfourcc(f_, "00db");
  w32(f_, frame_bytes);
  std::vector<uint8_t> row(stride, 0);
  // DIB convention: bottom-up rows, BGR byte order.
  for (int y = height_ - 1; y >= 0; --y) {
    const uint8_t* src = rgb.data() + size_t(y) * width_ * 3;
    for (int x = 0; x < width_; ++x) {
      row[size_t(x) * 3 + 0] = src[x * 3 + 2];
      row[size_t(x) * 3 + 1] = src[x * 3 + 1];
      row[size_t(x) * 3 + 2] = src[x * 3 + 0];
    }
    if (fwrite(row.data(), 1, stride, f_) != stride) {
      throw Error("short write to video file: " + path_);
    }
  }
  frame_sizes_.push_back(frame_bytes);
  ++frames_;
}

void AviWriter::close() {
  if (closed_) return;
  closed_ = true;
  if (!f_) return;
  if (frames_ == 0) {
    fclose(f_);
    f_ = nullptr;
    throw Error("empty stream: no frames written to " + path_);
  }

  const long movi_end = ftell(f_);

  wfourcc(f_, "idx1");
  w32(f_, uint32_t(frame_sizes_.size() * 16));
  uint32_t offset = 4;  // relative to the 'movi' fourcc
  for (uint32_t size : frame_sizes_) {
    wfourcc(f_, "00db");
    w32(f_, kAviifKeyframe);
    w32(f_, offset);
    w32(f_, size);
    offset += 8 + size;
  }
  const long file_end = ftell(f_);

  fseek(f_, 4, SEEK_SET);
  w32(f_, uint32_t(file_end - 8));  // RIFF payload
  fseek(f_, 12 + 8 + 4 + 8 + 16, SEEK_SET);
  w32(f_, uint32_t(frames_));  // avih dwTotalFrames
  // strh dwLength sits 40 bytes into the strh payload.
  fseek(f_, 12 + 8 + 4 + 8 + 56 + 8 + 4 + 8 + 32, SEEK_SET);
  w32(f_, uint32_t(frames_));
  fseek(f_, movi_start_ - 4, SEEK_SET);
  w32(f_, uint32_t(movi_end - movi_start_));

  fclose(f_);
  f_ = nullptr;
}

AviWriter::~AviWriter() {
  if (!closed_ && f_) {
    try {
      close();
    } catch (...) {
      // destructor must not throw; an empty stream still leaves no file
    }
  }
}

namespace {

// Walks RIFF chunks until `target`; positions the stream at its payload.
bool seek_chunk(FILE* f, const char* target, uint32_t* size_out,
                bool enter_lists) {
  for (;;) {
    char cc[4];
    if (fread(cc, 1, 4, f) != 4) return false;
    const uint32_t size = r32(f);
    if (std::memcmp(cc, target, 4) == 0) {
      if (size_out) *size_out = size;
      return true;
    }
    if (enter_lists && std::memcmp(cc, "LIST", 4) == 0) {
      char list_type[4];
      if (fread(list_type, 1, 4, f) != 4) return false;
      if (std::memcmp(list_type, target, 4) == 0) {
        if (size_out) *size_out = size;
        return true;
      }
      continue;  // descend: now positioned at the list's first child
    }
    fseek(f, long(size + (size & 1)), SEEK_CUR);
  }
}

}  // namespace

AviReader::AviReader(const std::string& path) {
  f_ = fopen(path.c_str(), "rb");
  if (!f_) throw Error("cannot open video file: " + path);
  char hdr[12];
  if (fread(hdr, 1, 12, f_) != 12 || std::memcmp(hdr, "RIFF", 4) != 0 ||
      std::memcmp(hdr + 8, "AVI ", 4) != 0) {
    fclose(f_);
    f_ = nullptr;
    throw Error("not an AVI file: " + path);
  }

  uint32_t size = 0;
  if (!seek_chunk(f_, "avih", &size, true) || size < 56) {
    fclose(f_);
    f_ = nullptr;
    throw Error("AVI missing avih header: " + path);
  }
  const long avih_start = ftell(f_);
  const uint32_t usec_per_frame = r32(f_);
  fseek(f_, avih_start + 16, SEEK_SET);
  info_.frame_count = long(r32(f_));
  fseek(f_, avih_start + 32, SEEK_SET);
  info_.width = int(r32(f_));
  info_.height = int(r32(f_));
  info_.fps = usec_per_frame > 0 ? int(1000000.0 / usec_per_frame + 0.5) : 0;
  fseek(f_, avih_start + long(size), SEEK_SET);

  uint32_t strf_size = 0;
  if (seek_chunk(f_, "strf", &strf_size, true) && strf_size >= 40) {
    const long strf_start = ftell(f_);
    fseek(f_, strf_start + 14, SEEK_SET);
    const uint16_t bits = uint16_t(r32(f_) & 0xffff);
    fseek(f_, strf_start + 16, SEEK_SET);
    const uint32_t compression = r32(f_);
    if (bits != 24 || compression != 0) {
      fclose(f_);
      f_ = nullptr;
      throw Error("unsupported AVI pixel format (need uncompressed RGB24): " +
                  path);
    }
    fseek(f_, strf_start + long(strf_size), SEEK_SET);
  }

  if (!seek_chunk(f_, "movi", nullptr, true)) {
    fclose(f_);
    f_ = nullptr;
    throw Error("AVI missing movi list: " + path);
  }
}

AviReader::~AviReader() {
  if (f_) fclose(f_);
}

bool AviReader::read_frame(std::vector<uint8_t>& rgb) {
  if (!f_) return false;
  for (;;) {
    char cc[4];
    if (fread(cc, 1, 4, f_) != 4) return false;
    if (std::memcmp(cc, "idx1", 4) == 0) return false;
    uint32_t size;
    try {
      size = r32(f_);
    } catch (const Error&) {
      return false;
    }
    if (std::memcmp(cc, "00db", 4) == 0 || std::memcmp(cc, "00dc", 4) == 0) {
      const size_t stride = row_stride(info_.width);
      if (size < stride * size_t(info_.height)) {
        throw Error("AVI frame chunk too small");
      }
      std::vector<uint8_t> raw(size);
      if (fread(raw.data(), 1, size, f_) != size) {
        throw Error("truncated AVI frame");
      }
      if (size & 1) fseek(f_, 1, SEEK_CUR);
      rgb.resize(size_t(info_.width) * size_t(info_.height) * 3);
      for (int y = 0; y < info_.height; ++y) {
        const uint8_t* src = raw.data() + size_t(info_.height - 1 - y) * stride;
        uint8_t* dst = rgb.data() + size_t(y) * info_.width * 3;
        for (int x = 0; x < info_.width; ++x) {
          dst[x * 3 + 0] = src[size_t(x) * 3 + 2];
          dst[x * 3 + 1] = src[size_t(x) * 3 + 1];
          dst[x * 3 + 2] = src[size_t(x) * 3 + 0];
        }
      }
      ++frames_read_;
      return true;
    }
    fseek(f_, long(size + (size & 1)), SEEK_CUR);
  }
}

VideoInfo read_video_info(const std::string& path) {
  return AviReader(path).info();
}

namespace {

inline uint8_t clamp_byte(double v) {
  return uint8_t(std::clamp(llround(v), 0LL, 255LL));
}

// Full-range BT.601.
void rgb_to_ycbcr(uint8_t r, uint8_t g, uint8_t b, uint8_t* y, uint8_t* cb,
                  uint8_t* cr) {
  *y = clamp_byte(0.299 * r + 0.587 * g + 0.114 * b);
  *cb = clamp_byte(128.0 - 0.168736 * r - 0.331264 * g + 0.5 * b);
  *cr = clamp_byte(128.0 + 0.5 * r - 0.418688 * g - 0.081312 * b);
}

}  // namespace

void avi_to_y4m(const std::string& avi_path, const std::string& y4m_path) {
  AviReader reader(avi_path);
  const VideoInfo& info = reader.info();
  FILE* out = fopen(y4m_path.c_str(), "wb");
  if (!out) throw Error("cannot create y4m file: " + y4m_path);

  fprintf(out, "YUV4MPEG2 W%d H%d F%d:1 Ip A1:1 C444 XCOLORRANGE=FULL\n",
          info.width, info.height, info.fps);

  const size_t plane = size_t(info.width) * size_t(info.height);
  std::vector<uint8_t> rgb, y(plane), cb(plane), cr(plane);
  while (reader.read_frame(rgb)) {
    for (size_t i = 0; i < plane; ++i) {
      rgb_to_ycbcr(rgb[i * 3], rgb[i * 3 + 1], rgb[i * 3 + 2], &y[i], &cb[i],
                   &cr[i]);
    }
    fputs("FRAME\n", out);
    fwrite(y.data(), 1, plane, out);
    fwrite(cb.data(), 1, plane, out);
    fwrite(cr.data(), 1, plane, out);
  }
  if (fclose(out) != 0) throw Error("short write to y4m file: " + y4m_path);
}

// ---- LumaVideoReader ----

struct LumaVideoReader::Impl {
  FILE* f = nullptr;
  VideoInfo info;
  bool is_y4m = false;
  size_t chroma_planes = 2;  // skipped after the luma plane
  AviReader* avi = nullptr;

  ~Impl() {
    if (f) fclose(f);
    delete avi;
  }
};

LumaVideoReader::LumaVideoReader(const std::string& path) : impl_(new Impl) {
  FILE* f = fopen(path.c_str(), "rb");
  if (!f) {
    delete impl_;
    impl_ = nullptr;
    throw Error("cannot open video file: " + path);
  }
  char magic[9] = {0};
  const size_t got = fread(magic, 1, 9, f);

  if (got == 9 && std::memcmp(magic, "YUV4MPEG2", 9) == 0) {
    impl_->f = f;
    impl_->is_y4m = true;
    std::string header;
    int c;
    while ((c = fgetc(f)) != EOF && c != '\n') header.push_back(char(c));
    int fps_num = 30, fps_den = 1;
    std::string colorspace = "420";
    size_t pos = 0;
    while (pos < header.size()) {
      while (pos < header.size() && header[pos] == ' ') ++pos;
      size_t end = header.find(' ', pos);
      if (end == std::string::npos) end = header.size();
      const std::string tok = header.substr(pos, end - pos);
      pos = end;
      if (tok.empty()) continue;
      switch (tok[0]) {
        case 'W': impl_->info.width = std::stoi(tok.substr(1)); break;
        case 'H': impl_->info.height = std::stoi(tok.substr(1)); break;
        case 'F': {
          const size_t colon = tok.find(':');
          fps_num = std::stoi(tok.substr(1, colon - 1));
          fps_den = std::stoi(tok.substr(colon + 1));
          break;
        }
        case 'C': colorspace = tok.substr(1); break;
        default: break;
      }
    }
    impl_->info.fps = fps_den > 0 ? (fps_num + fps_den / 2) / fps_den : 0;
    if (colorspace.rfind("444", 0) == 0) {
      impl_->chroma_planes = 2;
    } else if (colorspace == "mono") {
      impl_->chroma_planes = 0;
    } else {
      fclose(f);
      impl_->f = nullptr;
      delete impl_;
      impl_ = nullptr;
      throw Error("unsupported y4m colorspace C" + colorspace +
                  " (expected C444 or Cmono)");
    }
    // Uniform FRAME\n headers make the count derivable from the size.
    const long header_end = ftell(f);
    fseek(f, 0, SEEK_END);
    const long file_size = ftell(f);
    fseek(f, header_end, SEEK_SET);
    const size_t plane = size_t(impl_->info.width) * size_t(impl_->info.height);
    const size_t per_frame = 6 + plane * (1 + impl_->chroma_planes);
    if (per_frame > 6) {
      impl_->info.frame_count = long((file_size - header_end) / long(per_frame));
    }
    return;
  }

  fclose(f);
  if (got >= 4 && std::memcmp(magic, "RIFF", 4) == 0) {
    impl_->avi = new AviReader(path);
    impl_->info = impl_->avi->info();
    return;
  }
  delete impl_;
  impl_ = nullptr;
  throw Error("unrecognized video container: " + path);
}

LumaVideoReader::~LumaVideoReader() { delete impl_; }

const VideoInfo& LumaVideoReader::info() const { return impl_->info; }

bool LumaVideoReader::read_luma(std::vector<uint8_t>& luma) {
  const size_t plane =
      size_t(impl_->info.width) * size_t(impl_->info.height);
  if (impl_->avi) {
    std::vector<uint8_t> rgb;
    if (!impl_->avi->read_frame(rgb)) return false;
    luma.resize(plane);
    for (size_t i = 0; i < plane; ++i) {
      uint8_t y, cb, cr;
      rgb_to_ycbcr(rgb[i * 3], rgb[i * 3 + 1], rgb[i * 3 + 2], &y, &cb, &cr);
      luma[i] = y;
    }
    return true;
  }
  // y4m: FRAME header line, then planes.
  char c;
  char frame_tag[5] = {0};
  if (fread(frame_tag, 1, 5, impl_->f) != 5) return false;
  if (std::memcmp(frame_tag, "FRAME", 5) != 0) {
    throw Error("bad y4m frame header");
  }
  while (fread(&c, 1, 1, impl_->f) == 1 && c != '\n') {
  }
  luma.resize(plane);
  if (fread(luma.data(), 1, plane, impl_->f) != plane) {
    throw Error("truncated y4m frame");
  }
  if (impl_->chroma_planes > 0) {
    fseek(impl_->f, long(plane * impl_->chroma_planes), SEEK_CUR);
  }
  return true;
}

}  // namespace audiovmaf
