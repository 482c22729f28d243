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

#ifndef AUDIOVMAF_FFT_H_
#define AUDIOVMAF_FFT_H_

#include <complex>
#include <vector>

namespace audiovmaf {

// Real-to-complex FFT of size n (any size), returning bins 0..n/2.
// Thin wrapper over FFTW; plan creation is serialized internally so
// transforms may run from multiple threads.
class RealFft {
 public:
  explicit RealFft(size_t n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  size_t size() const { return n_; }
  size_t num_bins() const { return n_ / 2 + 1; }

  // in must hold size() reals; out receives num_bins() complex values.
  void forward(const double* in, std::complex<double>* out) const;

 private:
  size_t n_;
  void* plan_ = nullptr;  // fftw_plan
  double* in_ = nullptr;
  void* out_ = nullptr;  // fftw_complex*
};

// Complex-to-real inverse of RealFft (unnormalized, like FFTW: applying
// forward then inverse scales by n).
class RealIfft {
 public:
  explicit RealIfft(size_t n);
  ~RealIfft();
  RealIfft(const RealIfft&) = delete;
  RealIfft& operator=(const RealIfft&) = delete;

  size_t size() const { return n_; }
  void inverse(const std::complex<double>* in, double* out) const;

 private:
  size_t n_;
  void* plan_ = nullptr;
  void* in_ = nullptr;
  double* out_ = nullptr;
};

}  // namespace audiovmaf

#endif  // AUDIOVMAF_FFT_H_
