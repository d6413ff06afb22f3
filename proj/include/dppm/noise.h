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

// Seeded Laplace noise.
//
// The generator is std::mt19937_64, whose output sequence is fixed by the C++
// standard, and uniforms are built from its top 53 bits by hand rather than
// through std::uniform_real_distribution (whose algorithm is
// implementation-defined). Draw sequences are therefore identical across
// standard libraries and platforms with IEEE doubles.
//
// Caveat: floating-point Laplace sampling is known to leak information to an
// adversary that observes the low-order bits of noisy values. Hardening
// against that attack is out of scope here.

#ifndef DPPM_NOISE_H_
#define DPPM_NOISE_H_

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace dppm {

// Scale b of Lap(b). Always positive and finite.
class LaplaceScale {
 public:
  explicit LaplaceScale(double b);
  double value() const { return b_; }

 private:
  double b_;
};

enum class NoiseMode {
  kStandard,   // draws from Lap(b)
  kZero,       // always 0; for oracle tests
  kRecording,  // as kStandard, and every draw is appended to draw_log()
};

std::string_view noise_mode_name(NoiseMode mode);

// Mixes a stream index into a root seed (SplitMix64 finalizer over
// root + golden_ratio * (index + 1)). Used for per-query, per-window and
// per-trial derivation.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index);

// Single-owner randomness for one private query. May move between threads,
// must not be drawn from concurrently.
class NoiseSource {
 public:
  NoiseSource(NoiseMode mode, std::uint64_t seed);

  static NoiseSource standard(std::uint64_t seed) {
    return NoiseSource(NoiseMode::kStandard, seed);
  }
  static NoiseSource zero() { return NoiseSource(NoiseMode::kZero, 0); }
  static NoiseSource recording(std::uint64_t seed) {
    return NoiseSource(NoiseMode::kRecording, seed);
  }

  NoiseSource(const NoiseSource&) = delete;
  NoiseSource& operator=(const NoiseSource&) = delete;
  NoiseSource(NoiseSource&&) = default;
  NoiseSource& operator=(NoiseSource&&) = default;

  NoiseMode mode() const { return mode_; }
  std::uint64_t seed() const { return seed_; }

  // U uniform on the open interval (-1/2, 1/2).
  double uniform_centered();

  double laplace(LaplaceScale scale);

  // Independent source of the same mode seeded with derive_seed(seed(), i).
  NoiseSource fork(std::uint64_t stream) const;

  // Appends a forked child's draw log (recording mode). Callers absorb
  // children in a fixed order so the log is schedule independent.
  void absorb(NoiseSource&& child);

  const std::vector<double>& draw_log() const { return draw_log_; }
  std::uint64_t draws() const { return draws_; }

 private:
  NoiseMode mode_;
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::vector<double> draw_log_;
  std::uint64_t draws_ = 0;
};

double sample_laplace(NoiseSource& source, LaplaceScale scale);

// Inverse CDF: -b * sign(u) * ln(1 - 2|u|) for u in (-1/2, 1/2).
double laplace_from_uniform(double u, double b);

// P(|Lap(b)| > t) = exp(-t / b).
double laplace_tail(double b, double t);

double laplace_cdf(double b, double x);

}  // namespace dppm

#endif  // DPPM_NOISE_H_
