//
// Copyright 2026 The dppm Authors
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
//

#include "dppm/noise.h"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace dppm {

LaplaceScale::LaplaceScale(double b) : b_(b) {
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw std::invalid_argument("Laplace scale must be positive and finite");
  }
}

std::string_view noise_mode_name(NoiseMode mode) {
  switch (mode) {
    case NoiseMode::kStandard:
      return "standard";
    case NoiseMode::kZero:
      return "zero";
    case NoiseMode::kRecording:
      return "recording";
  }
  return "unknown";
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  std::uint64_t z = root + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

NoiseSource::NoiseSource(NoiseMode mode, std::uint64_t seed)
    : mode_(mode), seed_(seed), engine_(seed) {}

double NoiseSource::uniform_centered() {
  // 53-bit uniform on [0, 1); u == 0 would map to the closed endpoint -1/2.
  while (true) {
    const std::uint64_t bits = engine_() >> 11;
    if (bits == 0) continue;
    return static_cast<double>(bits) * 0x1.0p-53 - 0.5;
  }
}

double NoiseSource::laplace(LaplaceScale scale) {
  if (mode_ == NoiseMode::kZero) return 0.0;
  const double x = laplace_from_uniform(uniform_centered(), scale.value());
  ++draws_;
  if (mode_ == NoiseMode::kRecording) draw_log_.push_back(x);
  return x;
}

NoiseSource NoiseSource::fork(std::uint64_t stream) const {
  return NoiseSource(mode_, derive_seed(seed_, stream));
}

void NoiseSource::absorb(NoiseSource&& child) {
  draws_ += child.draws_;
  if (mode_ == NoiseMode::kRecording) {
    draw_log_.insert(draw_log_.end(), child.draw_log_.begin(),
                     child.draw_log_.end());
  }
  child.draw_log_.clear();
  child.draws_ = 0;
}

double sample_laplace(NoiseSource& source, LaplaceScale scale) {
  return source.laplace(scale);
}

double laplace_from_uniform(double u, double b) {
  if (!(u > -0.5 && u < 0.5)) {
    throw std::invalid_argument("laplace_from_uniform: u outside (-1/2, 1/2)");
  }
  if (u == 0.0) return 0.0;
  const double sign = u < 0.0 ? -1.0 : 1.0;
  return -b * sign * std::log1p(-2.0 * std::fabs(u));
}

double laplace_tail(double b, double t) {
  if (!(b > 0.0) || t < 0.0) {
    throw std::invalid_argument("laplace_tail: need b > 0 and t >= 0");
  }
  return std::exp(-t / b);
}

double laplace_cdf(double b, double x) {
  if (x < 0.0) return 0.5 * std::exp(x / b);
  return 1.0 - 0.5 * std::exp(-x / b);
}

}  // namespace dppm
