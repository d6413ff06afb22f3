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

#include "dppm/pattern_analysis.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

namespace dppm {

std::string_view regime_name(Regime regime) {
  switch (regime) {
    case Regime::kPeriodicReporting:
      return "PeriodicReporting";
    case Regime::kNonPeriodicCounting:
      return "NonPeriodicCounting";
    case Regime::kSmallKCounting:
      return "SmallKCounting";
    case Regime::kTrivialFallback:
      return "TrivialFallback";
  }
  return "Unknown";
}

std::size_t periodic_distance(SymbolView pattern, SymbolView root) {
  if (root.empty()) throw std::invalid_argument("periodic_distance: empty Q");
  std::size_t d = 0;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    d += (pattern[i] != root[i % root.size()]);
  }
  return d;
}

std::size_t min_period_distance(SymbolView pattern, std::size_t q) {
  if (q == 0 || q > pattern.size()) {
    throw std::invalid_argument("min_period_distance: q outside [1, m]");
  }
  std::size_t total = 0;
  for (std::size_t r = 0; r < q; ++r) {
    std::array<std::size_t, 256> freq{};
    std::size_t column = 0;
    for (std::size_t i = r; i < pattern.size(); i += q) {
      ++freq[pattern[i]];
      ++column;
    }
    total += column - *std::max_element(freq.begin(), freq.end());
  }
  return total;
}

bool is_primitive(SymbolView q) {
  if (q.empty()) throw std::invalid_argument("is_primitive: empty string");
  const std::size_t len = q.size();
  for (std::size_t t = 1; t < len; ++t) {
    if (len % t != 0) continue;
    bool repeats = true;
    for (std::size_t i = t; i < len && repeats; ++i) repeats = q[i] == q[i - t];
    if (repeats) return false;
  }
  return true;
}

namespace {

// Per residue class, the most frequent symbol (smallest byte on ties).
std::vector<Symbol> column_majority(SymbolView pattern, std::size_t q) {
  std::vector<Symbol> root(q);
  for (std::size_t r = 0; r < q; ++r) {
    std::array<std::size_t, 256> freq{};
    for (std::size_t i = r; i < pattern.size(); i += q) ++freq[pattern[i]];
    root[r] = static_cast<Symbol>(
        std::max_element(freq.begin(), freq.end()) - freq.begin());
  }
  return root;
}

}  // namespace

std::optional<PeriodicCandidate> shortest_close_period_within(
    SymbolView pattern, std::size_t max_distance, std::size_t q_max) {
  const std::size_t m = pattern.size();
  if (m == 0) throw std::invalid_argument("shortest_close_period: empty P");
  if (q_max > m) {
    throw std::invalid_argument("shortest_close_period: q_max > m");
  }

  for (std::size_t q = 1; q <= q_max; ++q) {
    const std::size_t blocks = m / q;
    // Only full blocks vote; the trailing partial block is checked by the
    // verification pass.
    std::map<std::vector<Symbol>, std::size_t> votes;
    for (std::size_t b = 0; b < blocks; ++b) {
      auto block = pattern.subspan(b * q, q);
      ++votes[std::vector<Symbol>(block.begin(), block.end())];
    }
    // With at least 2t + 1 blocks any Q within distance t equals all but at
    // most t blocks, so it is among the voted blocks. With fewer blocks the
    // vote can miss it; the column-majority root, which attains the minimum,
    // is added instead.
    const std::size_t needed =
        blocks > max_distance ? blocks - max_distance : 0;
    if (blocks < 2 * max_distance + 1) {
      votes.try_emplace(column_majority(pattern, q), needed);
    }

    std::optional<PeriodicCandidate> best;
    for (const auto& [block, count] : votes) {  // lexicographic order
      if (count < needed) continue;
      const std::size_t d = periodic_distance(pattern, block);
      if (d > max_distance) continue;
      if (!best || d < best->distance) {
        best = PeriodicCandidate{q, Text(block), d};
      }
    }
    if (best) {
      if (!is_primitive(best->root)) {
        throw std::logic_error(
            "shortest_close_period: minimal candidate is not primitive");
      }
      return best;
    }
  }
  return std::nullopt;
}

std::optional<PeriodicCandidate> shortest_close_period(SymbolView pattern,
                                                       std::size_t k,
                                                       std::size_t q_max) {
  return shortest_close_period_within(pattern, 2 * k, q_max);
}

double period_scale(std::size_t k, std::size_t n, double epsilon,
                    double beta) {
  const double noise_scale =
      96.0 * (std::log(static_cast<double>(n)) + std::log(6.0 / beta)) /
      epsilon;
  return std::max(static_cast<double>(k), noise_scale);
}

double small_k_scale(std::size_t n, double epsilon, double beta) {
  return 24.0 * std::log(6.0 * static_cast<double>(n) / beta) / epsilon;
}

namespace {

std::size_t floor_ratio(std::size_t m, double scale) {
  if (!(scale > 0.0)) return 0;
  return static_cast<std::size_t>(std::floor(static_cast<double>(m) / scale));
}

}  // namespace

DispatchDecision dispatch(SymbolView pattern, std::size_t k, std::size_t n,
                          double epsilon, double beta) {
  const std::size_t m = pattern.size();
  if (m == 0) throw std::invalid_argument("dispatch: empty pattern");
  if (k > m) throw std::invalid_argument("dispatch: k > m");
  if (m > n) throw std::invalid_argument("dispatch: m > n");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("dispatch: epsilon must be positive");
  }
  if (!(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("dispatch: beta must lie in (0, 1)");
  }

  DispatchDecision decision;
  decision.period_scale = period_scale(k, n, epsilon, beta);
  decision.small_k_scale = small_k_scale(n, epsilon, beta);
  decision.small_k =
      static_cast<std::size_t>(std::ceil(decision.small_k_scale));
  decision.effective_k = k;

  if (m < 2) {
    decision.regime = Regime::kTrivialFallback;
    return decision;
  }

  const std::size_t periodic_q_max =
      floor_ratio(m, 32.0 * decision.period_scale);
  if (auto cand = shortest_close_period(pattern, k, periodic_q_max)) {
    decision.regime = Regime::kPeriodicReporting;
    decision.candidate = std::move(cand);
    return decision;
  }

  if (k >= 1) {
    const std::size_t q_max = floor_ratio(m, 128.0 * static_cast<double>(k));
    if (!shortest_close_period(pattern, k, q_max)) {
      decision.regime = Regime::kNonPeriodicCounting;
      return decision;
    }
  }

  const std::size_t big_k = decision.small_k;
  if (k < big_k) {
    const std::size_t q_max = floor_ratio(m, 128.0 * static_cast<double>(big_k));
    if (!shortest_close_period(pattern, big_k, q_max)) {
      decision.regime = Regime::kSmallKCounting;
      decision.effective_k = big_k;
      return decision;
    }
  }

  decision.regime = Regime::kTrivialFallback;
  return decision;
}

}  // namespace dppm
