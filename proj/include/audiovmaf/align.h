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

#ifndef AUDIOVMAF_ALIGN_H_
#define AUDIOVMAF_ALIGN_H_

#include <utility>

#include "audiovmaf/audio.h"

namespace audiovmaf {

struct AlignmentReport {
  long lag_samples = 0;
  // rho(lag) = sum ref[n]*deg[n+lag] / sqrt(E_ref * E_deg), in [-1, 1].
  double peak_correlation = 0.0;
};

constexpr double kDefaultMaxLagS = 0.25;

// Integer-sample alignment of deg against ref by cross-correlation of the
// mid downmixes over lags in [-max_lag, +max_lag]. Returns deg shifted by
// -lag (zero padding the vacated edge) plus the report. Requires equal
// sample rates and non-silent signals ("silent signal" otherwise).
std::pair<AudioBuffer, AlignmentReport> time_align(
    const AudioBuffer& ref, const AudioBuffer& deg,
    double max_lag_s = kDefaultMaxLagS);

}  // namespace audiovmaf

#endif  // AUDIOVMAF_ALIGN_H_
