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

#ifndef AUDIOVMAF_AUDIO_H_
#define AUDIOVMAF_AUDIO_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace audiovmaf {

// All pipeline failures are reported as Error; the CLI maps them to exit
// code 2 with a stage-labeled message.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ChannelLayout { kMono, kStereo };

// Multichannel PCM normalized to full scale 1.0. Channels are stored as
// separate equal-length sample vectors; stereo is {L, R}.
struct AudioBuffer {
  std::vector<std::vector<double>> samples;
  int sample_rate = 0;

  size_t num_channels() const { return samples.size(); }
  size_t num_frames() const { return samples.empty() ? 0 : samples[0].size(); }
  ChannelLayout layout() const {
    return samples.size() == 1 ? ChannelLayout::kMono : ChannelLayout::kStereo;
  }
  double duration_s() const {
    return sample_rate > 0 ? static_cast<double>(num_frames()) / sample_rate
                           : 0.0;
  }
  // Equal channel lengths, positive rate, 1 or 2 channels, |x| <= 1.
  void validate() const;
};

// M[n] = 0.5 * (L[n] + R[n]). Errors on mono input ("already mono").
AudioBuffer downmix_mid(const AudioBuffer& buf);

// dBFS of a sine with amplitude a is 20*log10(a); full scale = 1.0.
double dbfs_to_amplitude(double dbfs);
double amplitude_to_dbfs(double amplitude);

}  // namespace audiovmaf

#endif  // AUDIOVMAF_AUDIO_H_
