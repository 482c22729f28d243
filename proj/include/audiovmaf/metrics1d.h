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

#ifndef AUDIOVMAF_METRICS1D_H_
#define AUDIOVMAF_METRICS1D_H_

#include <array>
#include <vector>

#include "audiovmaf/audio.h"

namespace audiovmaf {

// 1D adaptations of the classical image-quality baselines, computed on
// time-domain waveforms (stereo pairs are compared on the mid downmix).
struct Metric1dConfig {
  int window_len = 11;
  double window_sigma = 1.5;
  double dynamic_range = 2.0;  // signals live in [-1, 1]
  int ms_scales = 5;
  int vif_scales = 4;
  double k1 = 0.01;  // C1 = (k1*L)^2
  double k2 = 0.03;  // C2 = (k2*L)^2
  double vif_noise_var = 2.0;
  double gms_c = 0.0026;
  std::array<double, 5> ms_weights = {0.0448, 0.2856, 0.3001, 0.2363, 0.1333};
};

struct Metric1dReport {
  double ssim = 0.0;
  double ms_ssim = 0.0;
  double vifp = 0.0;
  double gmsm = 0.0;
  double gmsd_raw = 0.0;
  // Affine map of gmsd_raw onto [0.687, 1] (1 = identical): raw 0 -> 1,
  // the maximum possible deviation 0.5 -> 0.687. Raw stays primary.
  double gmsd_paper_scaled = 0.0;
};

// Gaussian-weighted local moments over every sliding window position.
struct LocalMoments {
  std::vector<double> mu_x, mu_y, var_x, var_y, cov;
  size_t size() const { return mu_x.size(); }
};
LocalMoments windowed_moments(const std::vector<double>& x,
                              const std::vector<double>& y,
                              const std::vector<double>& window);

// Normalized Gaussian window of length n.
std::vector<double> gaussian_window(int n, double sigma);

double ssim_1d(const std::vector<double>& ref, const std::vector<double>& deg,
               const Metric1dConfig& cfg = {});
double ms_ssim_1d(const std::vector<double>& ref,
                  const std::vector<double>& deg,
                  const Metric1dConfig& cfg = {});
double vifp_1d(const std::vector<double>& ref, const std::vector<double>& deg,
               const Metric1dConfig& cfg = {});

struct GmsResult {
  double gmsm = 0.0;
  double gmsd_raw = 0.0;
  double gmsd_paper_scaled = 0.0;
};
GmsResult gms_1d(const std::vector<double>& ref, const std::vector<double>& deg,
                 const Metric1dConfig& cfg = {});

// All five baselines on already-aligned equal-length signals.
Metric1dReport run_metrics1d(const std::vector<double>& ref,
                             const std::vector<double>& deg,
                             const Metric1dConfig& cfg = {});

}  // namespace audiovmaf

#endif  // AUDIOVMAF_METRICS1D_H_
