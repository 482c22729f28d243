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

#include "audiovmaf/frontend.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <memory>

#include "audiovmaf/fft.h"

namespace audiovmaf {

void FrontendConfig::validate(int sample_rate) const {
  if (num_bands < 1) throw Error("num_bands must be >= 1");
  if (window_len < 16) throw Error("window_len too small");
  if (hop < 1 || fps < 1) throw Error("hop and fps must be positive");
  if (long(hop) * fps != sample_rate) {
    throw Error("hop*fps must equal the sample rate (got " +
                std::to_string(hop) + "*" + std::to_string(fps) + " vs " +
                std::to_string(sample_rate) + ")");
  }
  if (!(f_min > 0.0 && f_min < f_max && f_max <= sample_rate / 2.0)) {
    throw Error("require 0 < f_min < f_max <= sample_rate/2");
  }
}

double erb_rate_from_hz(double f) {
  return 21.4 * std::log10(1.0 + 0.00437 * f);
}

double hz_from_erb_rate(double e) {
  return (std::pow(10.0, e / 21.4) - 1.0) / 0.00437;
}

double erb_bandwidth(double fc) { return 24.7 * (0.00437 * fc + 1.0); }

std::vector<double> erb_band_centers(const FrontendConfig& cfg,
                                     int sample_rate) {
  const double bin_hz = double(sample_rate) / cfg.window_len;
  const int nyquist_bin = cfg.window_len / 2;
  const double e_lo = erb_rate_from_hz(cfg.f_min);
  const double e_hi = erb_rate_from_hz(cfg.f_max);
  const double step =
      cfg.num_bands > 1 ? (e_hi - e_lo) / (cfg.num_bands - 1) : 0.0;

  std::vector<double> centers(size_t(cfg.num_bands), 0.0);
  long prev_bin = 0;
  for (int i = 0; i < cfg.num_bands; ++i) {
    const double ideal = hz_from_erb_rate(e_lo + step * i);
    long bin = lround(ideal / bin_hz);
    // Adjacent ideal centers can land on the same bin where the ERB grid
    // is denser than the FFT grid; keep centers strictly increasing by
    // taking the next free bin.
    if (bin <= prev_bin) bin = prev_bin + 1;
    if (bin > nyquist_bin) {
      throw Error("band collision: " + std::to_string(cfg.num_bands) +
                  " bands do not fit the FFT grid up to Nyquist");
    }
    centers[size_t(i)] = double(bin) * bin_hz;
    prev_bin = bin;
  }
  return centers;
}

double gammatone_weight(double center, double f) {
  const double b = 1.019 * erb_bandwidth(center);
  const double u = (f - center) / b;
  const double base = 1.0 + u * u;
  return 1.0 / (base * base * base * base);
}

std::vector<double> gammatone_weights(double center,
                                      const std::vector<double>& bin_freqs) {
  std::vector<double> w(bin_freqs.size());
  for (size_t i = 0; i < bin_freqs.size(); ++i) {
    w[i] = gammatone_weight(center, bin_freqs[i]);
  }
  return w;
}

double threshold_in_quiet(double f_hz) {
  if (!(f_hz >= 20.0 && f_hz <= 20000.0)) {
    throw Error("threshold-in-quiet defined for 20..20000 Hz");
  }
  const double k = f_hz / 1000.0;
  return 3.64 * std::pow(k, -0.8) -
         6.5 * std::exp(-0.6 * (k - 3.3) * (k - 3.3)) +
         1e-3 * k * k * k * k;
}

ErbSpectrogram power_spectrogram(const std::vector<double>& channel,
                                 int sample_rate, const FrontendConfig& cfg) {
  cfg.validate(sample_rate);
  const int n = cfg.window_len;
  if (long(channel.size()) < n) {
    throw Error("too short: need at least one analysis window (" +
                std::to_string(n) + " samples)");
  }
  const int num_cols = int((long(channel.size()) - n) / cfg.hop) + 1;
  const int num_bins = n / 2 + 1;
  const double bin_hz = double(sample_rate) / n;

  ErbSpectrogram spec;
  spec.num_bands = cfg.num_bands;
  spec.num_columns = num_cols;
  spec.column_period = double(cfg.hop) / sample_rate;
  spec.band_centers = erb_band_centers(cfg, sample_rate);
  spec.levels.assign(size_t(cfg.num_bands) * num_cols, 0.0);

  std::vector<double> bin_freqs(size_t(num_bins), 0.0);
  for (int k = 0; k < num_bins; ++k) bin_freqs[size_t(k)] = k * bin_hz;

  // Band weights plus the normalization that makes a sine of amplitude A
  // at the snapped center produce band power A^2: the windowed on-bin
  // sine puts |X| = A*N/4 on its bin and A*N/8 on the two neighbors, so
  // the weighted sum is (A*N/4)^2 * (1 + w(bin)/2).
  std::vector<std::vector<double>> weights{size_t(cfg.num_bands)};
  std::vector<double> inv_norm(size_t(cfg.num_bands), 0.0);
  const double coherent = double(n) / 4.0;
  for (int b = 0; b < cfg.num_bands; ++b) {
    weights[size_t(b)] = gammatone_weights(spec.band_centers[size_t(b)], bin_freqs);
    const double w1 = gammatone_weight(spec.band_centers[size_t(b)],
                                       spec.band_centers[size_t(b)] + bin_hz);
    inv_norm[size_t(b)] = 1.0 / (coherent * coherent * (1.0 + 0.5 * w1));
  }

  std::vector<double> hann(size_t(n), 0.0);
  for (int i = 0; i < n; ++i) {
    hann[size_t(i)] = 0.5 * (1.0 - std::cos(2.0 * M_PI * i / n));
  }

  RealFft fft{size_t(n)};
  std::vector<double> frame(size_t(n), 0.0);
  std::vector<std::complex<double>> spectrum(size_t(num_bins),
                                             std::complex<double>{});
  std::vector<double> power(size_t(num_bins), 0.0);

  for (int c = 0; c < num_cols; ++c) {
    const size_t start = size_t(c) * cfg.hop;
    for (int i = 0; i < n; ++i) {
      frame[size_t(i)] = channel[start + size_t(i)] * hann[size_t(i)];
    }
    fft.forward(frame.data(), spectrum.data());
    for (int k = 0; k < num_bins; ++k) {
      power[size_t(k)] = std::norm(spectrum[size_t(k)]);
    }
    for (int b = 0; b < cfg.num_bands; ++b) {
      const auto& w = weights[size_t(b)];
      double acc = 0.0;
      for (int k = 0; k < num_bins; ++k) acc += w[size_t(k)] * power[size_t(k)];
      spec.at(b, c) = acc * inv_norm[size_t(b)];
    }
  }
  return spec;
}

ErbSpectrogram calibrate_and_gate(const ErbSpectrogram& power_spec,
                                  const CalibrationParams& cal) {
  ErbSpectrogram out = power_spec;
  std::vector<double> gate_threshold(size_t(out.num_bands), 0.0);
  for (int b = 0; b < out.num_bands; ++b) {
    // Snapped centers can fall below 20 Hz for large windows; clamp into
    // the threshold formula's domain for gating purposes.
    const double f = std::clamp(out.band_centers[size_t(b)], 20.0, 20000.0);
    gate_threshold[size_t(b)] = threshold_in_quiet(f);
  }
  for (int b = 0; b < out.num_bands; ++b) {
    for (int c = 0; c < out.num_columns; ++c) {
      const double p = power_spec.at(b, c);
      if (p <= 0.0) {
        out.at(b, c) = 0.0;
        continue;
      }
      const double level = 10.0 * std::log10(p) + cal.offset_db;
      out.at(b, c) = level < gate_threshold[size_t(b)] ? 0.0 : level;
    }
  }
  return out;
}

ErbSpectrogram analyze_channel(const std::vector<double>& channel,
                               int sample_rate, const FrontendConfig& cfg) {
  return calibrate_and_gate(power_spectrogram(channel, sample_rate, cfg),
                            cfg.calibration);
}

std::vector<ErbSpectrogram> analyze_buffer(const AudioBuffer& buf,
                                           const FrontendConfig& cfg) {
  std::vector<ErbSpectrogram> specs;
  if (buf.layout() == ChannelLayout::kStereo) {
    specs.push_back(analyze_channel(buf.samples[0], buf.sample_rate, cfg));
    specs.push_back(analyze_channel(buf.samples[1], buf.sample_rate, cfg));
    AudioBuffer mid = downmix_mid(buf);
    specs.push_back(analyze_channel(mid.samples[0], buf.sample_rate, cfg));
  } else {
    specs.push_back(analyze_channel(buf.samples[0], buf.sample_rate, cfg));
  }
  return specs;
}

namespace {
constexpr char kDumpMagic[4] = {'E', 'R', 'B', 'S'};
constexpr uint32_t kDumpVersion = 1;

void write_u32(FILE* f, uint32_t v) {
  uint8_t b[4] = {uint8_t(v), uint8_t(v >> 8), uint8_t(v >> 16),
                  uint8_t(v >> 24)};
  fwrite(b, 1, 4, f);
}
uint32_t read_u32_file(FILE* f) {
  uint8_t b[4];
  if (fread(b, 1, 4, f) != 4) throw Error("truncated spectrogram dump");
  return uint32_t(b[0]) | uint32_t(b[1]) << 8 | uint32_t(b[2]) << 16 |
         uint32_t(b[3]) << 24;
}
}  // namespace

void dump_spectrogram(const std::string& path, const ErbSpectrogram& spec,
                      int sample_rate, int hop) {
  std::unique_ptr<FILE, int (*)(FILE*)> f(fopen(path.c_str(), "wb"), fclose);
  if (!f) throw Error("cannot write spectrogram dump: " + path);
  fwrite(kDumpMagic, 1, 4, f.get());
  write_u32(f.get(), kDumpVersion);
  write_u32(f.get(), uint32_t(spec.num_bands));
  write_u32(f.get(), uint32_t(spec.num_columns));
  write_u32(f.get(), uint32_t(sample_rate));
  write_u32(f.get(), uint32_t(hop));
  for (double v : spec.levels) {
    const float fv = float(v);
    fwrite(&fv, sizeof(float), 1, f.get());
  }
}

ErbSpectrogram load_spectrogram(const std::string& path, int* sample_rate_out,
                                int* hop_out) {
  std::unique_ptr<FILE, int (*)(FILE*)> f(fopen(path.c_str(), "rb"), fclose);
  if (!f) throw Error("cannot open spectrogram dump: " + path);
  char magic[4];
  if (fread(magic, 1, 4, f.get()) != 4 ||
      std::memcmp(magic, kDumpMagic, 4) != 0) {
    throw Error("not a spectrogram dump: " + path);
  }
  if (read_u32_file(f.get()) != kDumpVersion) {
    throw Error("unsupported spectrogram dump version: " + path);
  }
  ErbSpectrogram spec;
  spec.num_bands = int(read_u32_file(f.get()));
  spec.num_columns = int(read_u32_file(f.get()));
  const uint32_t rate = read_u32_file(f.get());
  const uint32_t hop = read_u32_file(f.get());
  if (sample_rate_out) *sample_rate_out = int(rate);
  if (hop_out) *hop_out = int(hop);
  spec.column_period = rate > 0 ? double(hop) / rate : 0.0;
  spec.levels.resize(size_t(spec.num_bands) * size_t(spec.num_columns));
  for (double& v : spec.levels) {
    float fv;
    if (fread(&fv, sizeof(float), 1, f.get()) != 1) {
      throw Error("truncated spectrogram dump: " + path);
    }
    v = fv;
  }
  return spec;
}

}  // namespace audiovmaf
