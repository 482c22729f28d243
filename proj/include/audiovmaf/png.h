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

#ifndef AUDIOVMAF_PNG_H_
#define AUDIOVMAF_PNG_H_

#include <cstdint>
#include <string>
#include <vector>

namespace audiovmaf {

// 8-bit RGB, no alpha, zlib-compressed. rgb is row-major top-down,
// 3*width*height bytes.
void write_png(const std::string& path, int width, int height,
               const std::vector<uint8_t>& rgb);

}  // namespace audiovmaf

#endif  // AUDIOVMAF_PNG_H_
