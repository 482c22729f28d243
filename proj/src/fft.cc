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

#include "audiovmaf/fft.h"

#include <fftw3.h>

#include <cstring>
#include <mutex>

namespace audiovmaf {

namespace {
// FFTW planning is not thread safe; execution on distinct buffers is.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

RealFft::RealFft(size_t n) : n_(n) {
  std::lock_guard<std::mutex> lock(plan_mutex());
  in_ = fftw_alloc_real(n_);
  out_ = fftw_alloc_complex(n_ / 2 + 1);
  plan_ = fftw_plan_dft_r2c_1d(int(n_), in_,
                               static_cast<fftw_complex*>(out_),
                               FFTW_ESTIMATE);
}

RealFft::~RealFft() {
  std::lock_guard<std::mutex> lock(plan_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  fftw_free(in_);
  fftw_free(static_cast<fftw_complex*>(out_));
}

void RealFft::forward(const double* in, std::complex<double>* out) const {
  std::memcpy(in_, in, n_ * sizeof(double));
  fftw_execute(static_cast<fftw_plan>(plan_));
  std::memcpy(out, out_, (n_ / 2 + 1) * sizeof(std::complex<double>));
}

RealIfft::RealIfft(size_t n) : n_(n) {
  std::lock_guard<std::mutex> lock(plan_mutex());
  in_ = fftw_alloc_complex(n_ / 2 + 1);
  out_ = fftw_alloc_real(n_);
  plan_ = fftw_plan_dft_c2r_1d(int(n_), static_cast<fftw_complex*>(in_),
                               out_, FFTW_ESTIMATE);
}

RealIfft::~RealIfft() {
  std::lock_guard<std::mutex> lock(plan_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  fftw_free(static_cast<fftw_complex*>(in_));
  fftw_free(out_);
}

void RealIfft::inverse(const std::complex<double>* in, double* out) const {
  std::memcpy(in_, in, (n_ / 2 + 1) * sizeof(std::complex<double>));
  fftw_execute(static_cast<fftw_plan>(plan_));
  std::memcpy(out, out_, n_ * sizeof(double));
}

}  // namespace audiovmaf
