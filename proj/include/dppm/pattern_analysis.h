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

// Public preprocessing of the query pattern. None of this touches the private
// text, so it consumes no privacy budget and no randomness.

#ifndef DPPM_PATTERN_ANALYSIS_H_
#define DPPM_PATTERN_ANALYSIS_H_

#include <cstddef>
#include <optional>
#include <string_view>

#include "dppm/text.h"

namespace dppm {

// A short primitive string Q such that P is close to Q^inf[0, m-1].
struct PeriodicCandidate {
  std::size_t period = 0;  // |Q|
  Text root;               // Q
  std::size_t distance = 0;  // dist_H(P, Q^inf[0, m-1])

  friend bool operator==(const PeriodicCandidate&,
                         const PeriodicCandidate&) = default;
};

enum class Regime {
  kPeriodicReporting,
  kNonPeriodicCounting,
  kSmallKCounting,
  kTrivialFallback,
};

std::string_view regime_name(Regime regime);

struct DispatchDecision {
  Regime regime = Regime::kTrivialFallback;
  std::optional<PeriodicCandidate> candidate;
  // k, or the small-k scale when regime == kSmallKCounting.
  std::size_t effective_k = 0;
  // C = max(k, 96 (ln n + ln(6/beta)) / eps).
  double period_scale = 0.0;
  // 24 ln(6n/beta) / eps, and its ceiling; for integer k, k < ceil(K) iff
  // k < K.
  double small_k_scale = 0.0;
  std::size_t small_k = 0;
};

// dist_H(P, Q^inf[0, m-1]) for a given Q (|Q| >= 1).
std::size_t periodic_distance(SymbolView pattern, SymbolView root);

// min over all Q with |Q| = q of dist_H(P, Q^inf[0, m-1]), computed per
// residue class as (class size) - (majority symbol frequency).
std::size_t min_period_distance(SymbolView pattern, std::size_t q);

// Smallest q <= q_max admitting Q with dist_H(P, Q^inf[0, m-1]) <= 2k, found
// by block voting and verified by direct distance computation. Among several
// such Q the closest wins, then the lexicographically least. Requires
// q_max <= m. Block voting alone is exact only while m / q >= 4k + 1; for
// larger q the column-majority root joins the vote.
std::optional<PeriodicCandidate> shortest_close_period(SymbolView pattern,
                                                       std::size_t k,
                                                       std::size_t q_max);

// As above with an explicit distance bound instead of 2k.
std::optional<PeriodicCandidate> shortest_close_period_within(
    SymbolView pattern, std::size_t max_distance, std::size_t q_max);

// True iff Q is not T^j for any T and j >= 2. Throws on empty input.
bool is_primitive(SymbolView q);

double period_scale(std::size_t k, std::size_t n, double epsilon, double beta);
double small_k_scale(std::size_t n, double epsilon, double beta);

// Chooses the algorithmic regime for a query. Deterministic. k = 0 is
// accepted: it can be served by the periodic or small-k routes but never by
// non-periodic counting.
DispatchDecision dispatch(SymbolView pattern, std::size_t k, std::size_t n,
                          double epsilon, double beta);

}  // namespace dppm

#endif  // DPPM_PATTERN_ANALYSIS_H_
