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

#include "fft.h"

#include <mutex>

namespace seld::internal {

namespace {

// The FFTW planner is not re-entrant.
std::mutex& PlannerMutex() {
  static std::mutex mu;
  return mu;
}

}  // namespace

RealFft::RealFft(std::size_t size) : size_(size) {
  std::lock_guard<std::mutex> lock(PlannerMutex());
  real_ = fftw_alloc_real(size_);
  spectrum_ = fftw_alloc_complex(bins());
  const int n = static_cast<int>(size_);
  forward_ = fftw_plan_dft_r2c_1d(n, real_, spectrum_, FFTW_ESTIMATE);
  inverse_ = fftw_plan_dft_c2r_1d(n, spectrum_, real_, FFTW_ESTIMATE);
}

RealFft::~RealFft() {
  std::lock_guard<std::mutex> lock(PlannerMutex());
  fftw_destroy_plan(forward_);
  fftw_destroy_plan(inverse_);
  fftw_free(real_);
  fftw_free(spectrum_);
}

void RealFft::Forward(std::span<const double> in,
                      std::span<std::complex<double>> out) {
  for (std::size_t i = 0; i < size_; ++i) real_[i] = in[i];
  fftw_execute(forward_);
  for (std::size_t k = 0; k < bins(); ++k) {
    out[k] = {spectrum_[k][0], spectrum_[k][1]};
  }
}

void RealFft::Inverse(std::span<const std::complex<double>> in,
                      std::span<double> out) {
  for (std::size_t k = 0; k < bins(); ++k) {
    spectrum_[k][0] = in[k].real();
    spectrum_[k][1] = in[k].imag();
  }
  // A real signal has real DC and Nyquist terms.
  spectrum_[0][1] = 0.0;
  if (size_ % 2 == 0) spectrum_[bins() - 1][1] = 0.0;
  fftw_execute(inverse_);
  const double scale = 1.0 / static_cast<double>(size_);
  for (std::size_t i = 0; i < size_; ++i) out[i] = real_[i] * scale;
}

}  // namespace seld::internal
