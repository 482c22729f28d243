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

#include "audiovmaf/ssim2d.h"

#include <vector>

#include "audiovmaf/audio.h"

namespace audiovmaf {

namespace {

constexpr int kWindow = 8;
constexpr double kC1 = (0.01 * 255.0) * (0.01 * 255.0);
constexpr double kC2 = (0.03 * 255.0) * (0.03 * 255.0);

// Summed-area table with a zero top row and left column.
void integral(const std::vector<uint8_t>& a, const std::vector<uint8_t>& b,
              int w, int h, std::vector<double>& sa, std::vector<double>& sb,
              std::vector<double>& saa, std::vector<double>& sbb,
              std::vector<double>& sab) {
  const int sw = w + 1;
  const size_t n = size_t(sw) * size_t(h + 1);
  sa.assign(n, 0.0);
  sb.assign(n, 0.0);
  saa.assign(n, 0.0);
  sbb.assign(n, 0.0);
  sab.assign(n, 0.0);
  for (int y = 0; y < h; ++y) {
    double ra = 0, rb = 0, raa = 0, rbb = 0, rab = 0;
    const size_t src = size_t(y) * w;
    const size_t up = size_t(y) * sw;
    const size_t cur = size_t(y + 1) * sw;
    for (int x = 0; x < w; ++x) {
      const double va = a[src + size_t(x)];
      const double vb = b[src + size_t(x)];
      ra += va;
      rb += vb;
      raa += va * va;
      rbb += vb * vb;
      rab += va * vb;
      sa[cur + size_t(x + 1)] = sa[up + size_t(x + 1)] + ra;
      sb[cur + size_t(x + 1)] = sb[up + size_t(x + 1)] + rb;
      saa[cur + size_t(x + 1)] = saa[up + size_t(x + 1)] + raa;
      sbb[cur + size_t(x + 1)] = sbb[up + size_t(x + 1)] + rbb;
      sab[cur + size_t(x + 1)] = sab[up + size_t(x + 1)] + rab;
    }
  }
}

inline double box(const std::vector<double>& s, int sw, int x, int y, int k) {
  return s[size_t(y) * sw + size_t(x)] -
         s[size_t(y) * sw + size_t(x + k)] -
         s[size_t(y + k) * sw + size_t(x)] +
         s[size_t(y + k) * sw + size_t(x + k)];
}

}  // namespace

double luma_ssim(const std::vector<uint8_t>& ref,
                 const std::vector<uint8_t>& deg, int width, int height) {
  if (ref.size() != size_t(width) * size_t(height) || ref.size() != deg.size()) {
    throw Error("luma plane size mismatch");
  }
  if (width < kWindow || height < kWindow) {
    throw Error("frame smaller than the SSIM window");
  }
  static thread_local std::vector<double> sa, sb, saa, sbb, sab;
  integral(ref, deg, width, height, sa, sb, saa, sbb, sab);

  const int sw = width + 1;
  const double inv_n = 1.0 / (kWindow * kWindow);
  double total = 0.0;
  long count = 0;
  for (int y = 0; y + kWindow <= height; ++y) {
    for (int x = 0; x + kWindow <= width; ++x) {
      const double mu_a = box(sa, sw, x, y, kWindow) * inv_n;
      const double mu_b = box(sb, sw, x, y, kWindow) * inv_n;
      const double var_a = box(saa, sw, x, y, kWindow) * inv_n - mu_a * mu_a;
      const double var_b = box(sbb, sw, x, y, kWindow) * inv_n - mu_b * mu_b;
      const double cov = box(sab, sw, x, y, kWindow) * inv_n - mu_a * mu_b;
      const double s =
          ((2.0 * mu_a * mu_b + kC1) * (2.0 * cov + kC2)) /
          ((mu_a * mu_a + mu_b * mu_b + kC1) * (var_a + var_b + kC2));
      total += s;
      ++count;
    }
  }
  return total / double(count);
}

}  // namespace audiovmaf
