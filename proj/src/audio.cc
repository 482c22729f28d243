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

#include "audiovmaf/audio.h"

#include <cmath>

namespace audiovmaf {

void AudioBuffer::validate() const {
  if (samples.empty() || samples.size() > 2) {
    throw Error("unsupported channel layout (expected mono or stereo)");
  }
  if (sample_rate <= 0) {
    throw Error("sample_rate must be positive");
  }
  const size_t n = samples[0].size();
  for (const auto& ch : samples) {
    if (ch.size() != n) {
      throw Error("channels have unequal lengths");
    }
    for (double v : ch) {
      if (!(std::fabs(v) <= 1.0 + 1e-9)) {
        throw Error("sample exceeds full scale after normalization");
      }
    }
  }
}

AudioBuffer downmix_mid(const AudioBuffer& buf) {
  if (buf.layout() == ChannelLayout::kMono) {
    throw Error("already mono");
  }
  AudioBuffer out;
  out.sample_rate = buf.sample_rate;
  const auto& l = buf.samples[0];
  const auto& r = buf.samples[1];
  std::vector<double> mid(l.size());
  for (size_t i = 0; i < l.size(); ++i) {
    mid[i] = 0.5 * (l[i] + r[i]);
  }
  out.samples.push_back(std::move(mid));
  return out;
}

double dbfs_to_amplitude(double dbfs) { return std::pow(10.0, dbfs / 20.0); }

double amplitude_to_dbfs(double amplitude) {
  return 20.0 * std::log10(amplitude);
}

}  // namespace audiovmaf
