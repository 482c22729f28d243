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

#ifndef AUDIOVMAF_RESAMPLE_H_
#define AUDIOVMAF_RESAMPLE_H_

#include <vector>

#include "audiovmaf/audio.h"

namespace audiovmaf {

// Kaiser-windowed-sinc resampler. Passband amplitude error stays well
// below 0.1 dB up to ~0.47 of the lower Nyquist, which the calibration
// tests rely on. Output length is round(n_in * target / source).
std::vector<double> resample_channel(const std::vector<double>& in,
                                     int source_rate, int target_rate);

// Resamples every channel; returns the input unchanged when rates match.
// Samples are clamped to [-1, 1] afterwards (sinc overshoot).
AudioBuffer resample(const AudioBuffer& in, int target_rate);

}  // namespace audiovmaf

#endif  // AUDIOVMAF_RESAMPLE_H_
