// Copyright 2026 The seldkit Authors. All Rights Reserved.
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

#ifndef SELD_SRC_FFT_H_
#define SELD_SRC_FFT_H_

#include <complex>
#include <cstddef>
#include <span>

#include <fftw3.h>

namespace seld::internal {

// Real-to-complex transform of a fixed size backed by FFTW. One instance
// owns its buffers and plans; use one instance per thread.
class RealFft {
 public:
  explicit RealFft(std::size_t size);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return size_; }
  std::size_t bins() const { return size_ / 2 + 1; }

  // Unnormalized forward DFT: X[k] = sum_n x[n] exp(-j 2 pi k n / N).
  void Forward(std::span<const double> in, std::span<std::complex<double>> out);

  // Inverse including the 1/N factor, so Inverse(Forward(x)) == x.
  void Inverse(std::span<const std::complex<double>> in, std::span<double> out);

 private:
  std::size_t size_;
  double* real_ = nullptr;
  fftw_complex* spectrum_ = nullptr;
  fftw_plan forward_ = nullptr;
  fftw_plan inverse_ = nullptr;
};

}  // namespace seld::internal

#endif  // SELD_SRC_FFT_H_
