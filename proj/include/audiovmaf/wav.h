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

#ifndef AUDIOVMAF_WAV_H_
#define AUDIOVMAF_WAV_H_

#include <string>

#include "audiovmaf/audio.h"

namespace audiovmaf {

// True if the file starts with a RIFF/WAVE header.
bool is_wav_file(const std::string& path);

// Native reader for PCM 16/24/32-bit integer and 32/64-bit float WAV,
// including WAVE_FORMAT_EXTENSIBLE. Samples are normalized to [-1, 1].
AudioBuffer read_wav(const std::string& path);

// Writes 32-bit float WAV (format 3). Used for fixtures and the
// intermediate files handed to/returned by the external media tool.
void write_wav(const std::string& path, const AudioBuffer& buf);

}  // namespace audiovmaf

#endif  // AUDIOVMAF_WAV_H_
