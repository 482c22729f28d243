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

#include "audiovmaf/wav.h"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <memory>

namespace audiovmaf {

namespace {

constexpr uint16_t kFormatPcm = 0x0001;
constexpr uint16_t kFormatFloat = 0x0003;
constexpr uint16_t kFormatExtensible = 0xFFFE;

struct FileCloser {
  void operator()(FILE* f) const {
    if (f) fclose(f);
  }
};
using FilePtr = std::unique_ptr<FILE, FileCloser>;

uint32_t read_u32(const uint8_t* p) {
  return uint32_t(p[0]) | uint32_t(p[1]) << 8 | uint32_t(p[2]) << 16 |
         uint32_t(p[3]) << 24;
}
uint16_t read_u16(const uint8_t* p) {
  return uint16_t(p[0]) | uint16_t(p[1]) << 8;
}

void put_u32(std::vector<uint8_t>& v, uint32_t x) {
  v.push_back(uint8_t(x));
  v.push_back(uint8_t(x >> 8));
  v.push_back(uint8_t(x >> 16));
  v.push_back(uint8_t(x >> 24));
}
void put_u16(std::vector<uint8_t>& v, uint16_t x) {
  v.push_back(uint8_t(x));
  v.push_back(uint8_t(x >> 8));
}

double decode_sample(const uint8_t* p, uint16_t format, int bits) {
  if (format == kFormatFloat) {
    if (bits == 32) {
      float f;
      std::memcpy(&f, p, 4);
      return f;
    }
    double d;
    std::memcpy(&d, p, 8);
    return d;
  }
  switch (bits) {
    case 16: {
      int16_t s = int16_t(read_u16(p));
      return s / 32768.0;
    }
    case 24: {
      int32_t s = int32_t(uint32_t(p[0]) << 8 | uint32_t(p[1]) << 16 |
                          uint32_t(p[2]) << 24) >>
                  8;
      return s / 8388608.0;
    }
    case 32: {
      int32_t s;
      std::memcpy(&s, p, 4);
      return s / 2147483648.0;
    }
    default:
      throw Error("unsupported WAV bit depth: " + std::to_string(bits));
  }
}

}  // namespace

bool is_wav_file(const std::string& path) {
  FilePtr f(fopen(path.c_str(), "rb"));
  if (!f) return false;
  uint8_t hdr[12];
  if (fread(hdr, 1, 12, f.get()) != 12) return false;
  return std::memcmp(hdr, "RIFF", 4) == 0 && std::memcmp(hdr + 8, "WAVE", 4) == 0;
}

AudioBuffer read_wav(const std::string& path) {
  FilePtr f(fopen(path.c_str(), "rb"));
  if (!f) {
    throw Error("cannot open WAV file: " + path);
  }
  uint8_t hdr[12];
  if (fread(hdr, 1, 12, f.get()) != 12 || std::memcmp(hdr, "RIFF", 4) != 0 ||
      std::memcmp(hdr + 8, "WAVE", 4) != 0) {
    throw Error("not a RIFF/WAVE file: " + path);
  }

  uint16_t format = 0;
  uint16_t channels = 0;
  uint32_t rate = 0;
  uint16_t bits = 0;
  bool have_fmt = false;
  std::vector<uint8_t> data;

  // Chunks are word aligned; odd sizes carry a pad byte.
  for (;;) {
    uint8_t chdr[8];
    if (fread(chdr, 1, 8, f.get()) != 8) break;
    const uint32_t size = read_u32(chdr + 4);
    if (std::memcmp(chdr, "fmt ", 4) == 0) {
      std::vector<uint8_t> fmt(size);
      if (fread(fmt.data(), 1, size, f.get()) != size || size < 16) {
        throw Error("truncated fmt chunk: " + path);
      }
      format = read_u16(fmt.data());
      channels = read_u16(fmt.data() + 2);
      rate = read_u32(fmt.data() + 4);
      bits = read_u16(fmt.data() + 14);
      if (format == kFormatExtensible) {
        if (size < 40) throw Error("truncated extensible fmt chunk: " + path);
        format = read_u16(fmt.data() + 24);  // first bytes of SubFormat GUID
      }
      have_fmt = true;
    } else if (std::memcmp(chdr, "data", 4) == 0) {
      data.resize(size);
      if (fread(data.data(), 1, size, f.get()) != size) {
        throw Error("truncated data chunk: " + path);
      }
    } else {
      if (fseek(f.get(), long(size), SEEK_CUR) != 0) break;
    }
    if (size % 2 == 1) fseek(f.get(), 1, SEEK_CUR);
  }

  if (!have_fmt) throw Error("WAV file missing fmt chunk: " + path);
  if (data.empty()) throw Error("WAV file missing data chunk: " + path);
  if (format != kFormatPcm && format != kFormatFloat) {
    throw Error("unsupported WAV format tag: " + std::to_string(format));
  }
  if (format == kFormatFloat && bits != 32 && bits != 64) {
    throw Error("unsupported float WAV bit depth: " + std::to_string(bits));
  }
  if (channels < 1 || channels > 2) {
    throw Error("unsupported channel layout (expected mono or stereo)");
  }

  const size_t bytes_per_sample = bits / 8;
  const size_t stride = bytes_per_sample * channels;
  const size_t frames = data.size() / stride;

  AudioBuffer buf;
  buf.sample_rate = int(rate);
  buf.samples.assign(channels, std::vector<double>(frames));
  for (size_t n = 0; n < frames; ++n) {
    for (uint16_t c = 0; c < channels; ++c) {
      double v = decode_sample(data.data() + n * stride + c * bytes_per_sample,
                               format, bits);
      buf.samples[c][n] = std::clamp(v, -1.0, 1.0);
    }
  }
  buf.validate();
  return buf;
}

void write_wav(const std::string& path, const AudioBuffer& buf) {
  buf.validate();
  const uint16_t channels = uint16_t(buf.num_channels());
  const uint32_t frames = uint32_t(buf.num_frames());
  const uint32_t data_size = frames * channels * 4;

  std::vector<uint8_t> out;
  out.reserve(44 + data_size);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  put_u32(out, 36 + data_size);
  out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  put_u32(out, 16);
  put_u16(out, kFormatFloat);
  put_u16(out, channels);
  put_u32(out, uint32_t(buf.sample_rate));
  put_u32(out, uint32_t(buf.sample_rate) * channels * 4);  // byte rate
  put_u16(out, uint16_t(channels * 4));                    // block align
  put_u16(out, 32);
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  put_u32(out, data_size);
  for (uint32_t n = 0; n < frames; ++n) {
    for (uint16_t c = 0; c < channels; ++c) {
      float v = float(buf.samples[c][n]);
      uint8_t b[4];
      std::memcpy(b, &v, 4);
      out.insert(out.end(), b, b + 4);
    }
  }

  FilePtr f(fopen(path.c_str(), "wb"));
  if (!f || fwrite(out.data(), 1, out.size(), f.get()) != out.size()) {
    throw Error("cannot write WAV file: " + path);
  }
}

}  // namespace audiovmaf
