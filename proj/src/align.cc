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

#include "audiovmaf/align.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "audiovmaf/fft.h"

namespace audiovmaf {

namespace {

std::vector<double> mono_mix(const AudioBuffer& buf) {
  if (buf.layout() == ChannelLayout::kMono) return buf.samples[0];
  std::vector<double> mid(buf.num_frames());
  for (size_t i = 0; i < mid.size(); ++i) {
    mid[i] = 0.5 * (buf.samples[0][i] + buf.samples[1][i]);
  }
  return mid;
}

double energy(const std::vector<double>& x) {
  double e = 0.0;
  for (double v : x) e += v * v;
  return e;
}

size_t next_pow2(size_t n) {
  size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

std::pair<AudioBuffer, AlignmentReport> time_align(const AudioBuffer& ref,
                                                   const AudioBuffer& deg,
                                                   double max_lag_s) {
  if (ref.sample_rate != deg.sample_rate) {
    throw Error("sample rate mismatch between reference and coded audio");
  }
  const std::vector<double> a = mono_mix(ref);
  const std::vector<double> b = mono_mix(deg);
  const double ea = energy(a);
  const double eb = energy(b);
  if (ea <= 0.0 || eb <= 0.0) {
    throw Error("silent signal");
  }

  long max_lag = lround(max_lag_s * ref.sample_rate);
  max_lag = std::min<long>(max_lag, long(std::min(a.size(), b.size())) - 1);
  max_lag = std::max<long>(max_lag, 0);

  // Circular correlation with enough zero padding equals the linear one
  // for every |lag| <= max_lag. c[l] = sum_n a[n] * b[n+l].
  const size_t nfft =
      next_pow2(std::max(a.size(), b.size()) + size_t(max_lag) + 1);
  std::vector<double> pa(nfft, 0.0), pb(nfft, 0.0);
  std::copy(a.begin(), a.end(), pa.begin());
  std::copy(b.begin(), b.end(), pb.begin());

  RealFft fft(nfft);
  RealIfft ifft(nfft);
  std::vector<std::complex<double>> fa(nfft / 2 + 1), fb(nfft / 2 + 1);
  fft.forward(pa.data(), fa.data());
  fft.forward(pb.data(), fb.data());
  for (size_t k = 0; k < fa.size(); ++k) {
    fa[k] = std::conj(fa[k]) * fb[k];
  }
  std::vector<double> corr(nfft);
  ifft.inverse(fa.data(), corr.data());

  long best_lag = 0;
  double best = -1e300;
  for (long l = -max_lag; l <= max_lag; ++l) {
    const size_t idx = l >= 0 ? size_t(l) : nfft - size_t(-l);
    const double c = corr[idx];
    if (c > best) {
      best = c;
      best_lag = l;
    }
  }

  AlignmentReport report;
  report.lag_samples = best_lag;
  report.peak_correlation = best / (double(nfft) * std::sqrt(ea * eb));

  // Shift deg by -lag, zero padding the vacated edge, length preserved.
  AudioBuffer aligned;
  aligned.sample_rate = deg.sample_rate;
  const long n = long(deg.num_frames());
  for (const auto& ch : deg.samples) {
    std::vector<double> shifted(size_t(n), 0.0);
    for (long i = 0; i < n; ++i) {
      const long j = i + best_lag;
      if (j >= 0 && j < n) shifted[size_t(i)] = ch[size_t(j)];
    }
    aligned.samples.push_back(std::move(shifted));
  }
  return {std::move(aligned), report};
}

}  // namespace audiovmaf
