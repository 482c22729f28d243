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

#ifndef AUDIOVMAF_SSIM2D_H_
#define AUDIOVMAF_SSIM2D_H_

#include <cstdint>
#include <vector>

namespace audiovmaf {

// Mean structural similarity of two 8-bit luma planes with an 8x8 box
// window at every position (integral-image implementation). This is the
// per-frame metric behind the bundled frscore engine.
double luma_ssim(const std::vector<uint8_t>& ref,
                 const std::vector<uint8_t>& deg, int width, int height);

}  // namespace audiovmaf

#endif  // AUDIOVMAF_SSIM2D_H_
