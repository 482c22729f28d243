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

#ifndef AUDIOVMAF_FRONTEND_H_
#define AUDIOVMAF_FRONTEND_H_

#include <cstddef>
#include <string>
#include <vector>

#include "audiovmaf/audio.h"

namespace audiovmaf {

// Maps digital level to sound pressure level: a sine at dbfs_ref is
// calibrated to spl_ref, which fixes offset_db = spl_ref - dbfs_ref for
// the unit-gain band normalization used by power_spectrogram.
struct CalibrationParams {
  double dbfs_ref = -25.0;
  double spl_ref = 85.0;
  double offset_db = 110.0;

  static CalibrationParams derive(double dbfs_ref_in, double spl_ref_in) {
    return {dbfs_ref_in, spl_ref_in, spl_ref_in - dbfs_ref_in};
  }
};

struct FrontendConfig {
  int num_bands = 80;
  double f_min = 30.0;
  double f_max = 18000.0;
  int window_len = 2048;  // 42.67 ms at 48 kHz
  int hop = 1600;         // one video frame at 30 fps
  int fps = 30;
  CalibrationParams calibration;

  // hop*fps == sample_rate and 0 < f_min < f_max <= sample_rate/2.
  void validate(int sample_rate) const;
};

// Calibrated band levels in dB SPL; level 0 encodes a gated cell (below
// threshold-in-quiet) or silence. Before calibrate_and_gate the `levels`
// matrix holds raw normalized band powers instead.
struct ErbSpectrogram {
  int num_bands = 0;
  int num_columns = 0;
  std::vector<double> levels;        // row-major [band][column]
  std::vector<double> band_centers;  // Hz, snapped to FFT bin centers
  double column_period = 0.0;        // seconds per column (= hop/rate)

  double& at(int band, int col) { return levels[size_t(band) * num_columns + col]; }
  double at(int band, int col) const { return levels[size_t(band) * num_columns + col]; }
};

// ERB-rate scale E(f) = 21.4*log10(1 + 0.00437*f) and its inverse.
double erb_rate_from_hz(double f);
double hz_from_erb_rate(double e);

// Equivalent rectangular bandwidth at fc: 24.7*(0.00437*fc + 1).
double erb_bandwidth(double fc);

// num_bands centers uniformly spaced on the ERB-rate scale over
// [f_min, f_max], each snapped to the nearest FFT bin center
// k*sample_rate/window_len. Snapping is monotone: a band whose nearest
// bin is already taken moves to the next higher bin; if that runs past
// the Nyquist bin the config is rejected ("band collision").
std::vector<double> erb_band_centers(const FrontendConfig& cfg,
                                     int sample_rate);

// Power-domain 4th-order gammatone response around `center`, peak 1:
// w(f) = (1 + ((f-center)/b)^2)^-4 with b = 1.019*ERB(center).
double gammatone_weight(double center, double f);
std::vector<double> gammatone_weights(double center,
                                      const std::vector<double>& bin_freqs);

// Threshold-in-quiet approximation in dB SPL, valid for 20..20000 Hz:
// Tq(f) = 3.64 (f/1k)^-0.8 - 6.5 exp(-0.6 ((f/1k)-3.3)^2) + 1e-3 (f/1k)^4.
double threshold_in_quiet(double f_hz);

// Hann-windowed FFT power spectrogram grouped into gammatone-weighted ERB
// bands. Band powers are normalized so a sine of amplitude A at a band's
// snapped center yields band power A^2 exactly (one calibration offset
// then fits every band). Columns advance by `hop`; column count is
// floor((n - window_len)/hop) + 1; errors with "too short" for inputs
// under one window.
ErbSpectrogram power_spectrogram(const std::vector<double>& channel,
                                 int sample_rate, const FrontendConfig& cfg);

// level = 10*log10(power) + offset_db, then cells below the
// threshold-in-quiet at their band center are zeroed.
ErbSpectrogram calibrate_and_gate(const ErbSpectrogram& power_spec,
                                  const CalibrationParams& cal);

// power_spectrogram + calibrate_and_gate.
ErbSpectrogram analyze_channel(const std::vector<double>& channel,
                               int sample_rate, const FrontendConfig& cfg);

// Per-signal spectrograms for one buffer: stereo yields {L, R, M},
// mono yields a single entry.
std::vector<ErbSpectrogram> analyze_buffer(const AudioBuffer& buf,
                                           const FrontendConfig& cfg);

// Binary debug dump: magic "ERBS", u32 {version, bands, columns,
// sample_rate, hop}, then row-major float32 levels.
void dump_spectrogram(const std::string& path, const ErbSpectrogram& spec,
                      int sample_rate, int hop);
ErbSpectrogram load_spectrogram(const std::string& path, int* sample_rate_out,
                                int* hop_out);

}  // namespace audiovmaf

#endif  // AUDIOVMAF_FRONTEND_H_
