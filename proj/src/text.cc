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

#include "dppm/text.h"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dppm {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

Text::Text(std::string_view chars) : bytes_(chars.begin(), chars.end()) {}

Text Text::substr(Interval span) const {
  if (span.first > span.last || span.last >= bytes_.size()) {
    throw std::out_of_range("substr: interval outside text");
  }
  return Text(std::vector<Symbol>(bytes_.begin() + span.first,
                                  bytes_.begin() + span.last + 1));
}

std::string Text::to_string() const {
  return std::string(bytes_.begin(), bytes_.end());
}

Pattern::Pattern(Text text) : text_(std::move(text)) {
  if (text_.empty()) throw std::invalid_argument("pattern must be non-empty");
}

std::size_t hamming_distance(SymbolView a, SymbolView b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("hamming_distance: length mismatch");
  }
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] != b[i]);
  return d;
}

namespace {

void check_sliding_args(SymbolView text, SymbolView pattern) {
  if (pattern.empty()) {
    throw std::invalid_argument("sliding_distances: empty pattern");
  }
  if (pattern.size() > text.size()) {
    throw std::invalid_argument("sliding_distances: pattern longer than text");
  }
}

}  // namespace

std::vector<std::size_t> sliding_distances_reference(SymbolView text,
                                                     SymbolView pattern) {
  check_sliding_args(text, pattern);
  const std::size_t m = pattern.size();
  std::vector<std::size_t> d(text.size() - m + 1);
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] = hamming_distance(text.subspan(i, m), pattern);
  }
  return d;
}

std::vector<std::size_t> sliding_distances(SymbolView text, SymbolView pattern,
                                           Execution execution) {
  if (execution == Execution::kSerial) {
    return sliding_distances_reference(text, pattern);
  }
  check_sliding_args(text, pattern);
  const std::size_t m = pattern.size();
  const auto windows = static_cast<std::int64_t>(text.size() - m + 1);
  std::vector<std::size_t> d(static_cast<std::size_t>(windows));
  const Symbol* s = text.data();
  const Symbol* p = pattern.data();
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < windows; ++i) {
    const Symbol* w = s + i;
    std::size_t mismatches = 0;
    for (std::size_t j = 0; j < m; ++j) mismatches += (w[j] != p[j]);
    d[static_cast<std::size_t>(i)] = mismatches;
  }
  return d;
}

std::size_t exact_count(SymbolView text, SymbolView pattern, std::size_t x) {
  const auto d = sliding_distances(text, pattern);
  return static_cast<std::size_t>(
      std::count_if(d.begin(), d.end(), [x](std::size_t v) { return v <= x; }));
}

std::vector<std::size_t> exact_report(SymbolView text, SymbolView pattern,
                                      std::size_t x) {
  const auto d = sliding_distances(text, pattern);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] <= x) out.push_back(i);
  }
  return out;
}

Text reverse(SymbolView text) {
  return Text(std::vector<Symbol>(text.rbegin(), text.rend()));
}

WindowFamily periodic_cover(std::size_t n, std::size_t m) {
  if (m > n) throw std::invalid_argument("periodic_cover: m > n");
  if (m < 2) throw std::invalid_argument("periodic_cover: requires m >= 2");
  const std::size_t stride = m / 2;
  const std::size_t length = (3 * m) / 2 - 1;
  const std::size_t full = (n - m) / stride;

  WindowFamily family{CoverKind::kPeriodic, {}};
  family.windows.reserve(full + 1);
  for (std::size_t j = 0; j < full; ++j) {
    const std::size_t a = j * stride;
    family.windows.push_back({a, std::min(a + length - 1, n - 1)});
  }
  const Interval tail{full * stride, n - 1};
  if (family.windows.empty() || !(family.windows.back() == tail)) {
    family.windows.push_back(tail);
  }
  return family;
}

WindowFamily counting_cover(std::size_t n, std::size_t m) {
  if (m > n) throw std::invalid_argument("counting_cover: m > n");
  if (m == 0) throw std::invalid_argument("counting_cover: requires m >= 1");
  const std::size_t blocks = (n + 1) / m;

  WindowFamily family{CoverKind::kCounting, {}};
  family.windows.reserve(blocks);
  for (std::size_t j = 0; j + 2 <= blocks; ++j) {
    family.windows.push_back({j * m, (j + 2) * m - 2});
  }
  // For m = 1 the tail start is n, i.e. the tail is empty.
  const std::size_t tail_start = (blocks - 1) * m;
  if (tail_start <= n - 1) family.windows.push_back({tail_start, n - 1});
  return family;
}

std::string check_window_family(const WindowFamily& family, std::size_t n,
                                std::size_t m) {
  std::ostringstream err;
  const auto& w = family.windows;
  if (w.empty()) return "no windows";
  const std::size_t max_cover = family.kind == CoverKind::kPeriodic ? 3 : 2;
  std::vector<std::size_t> cover(n, 0);
  for (std::size_t idx = 0; idx < w.size(); ++idx) {
    if (w[idx].first > w[idx].last || w[idx].last >= n) {
      err << "window " << idx << " out of range";
      return err.str();
    }
    for (std::size_t p = w[idx].first; p <= w[idx].last; ++p) ++cover[p];
    if (idx > 0) {
      const auto& prev = w[idx - 1];
      if (w[idx].first <= prev.last &&
          prev.last - w[idx].first + 1 > m - 1) {
        err << "windows " << idx - 1 << "," << idx << " overlap by more than "
            << m - 1;
        return err.str();
      }
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    if (cover[p] == 0) {
      err << "position " << p << " uncovered";
      return err.str();
    }
    if (cover[p] > max_cover) {
      err << "position " << p << " in " << cover[p] << " windows";
      return err.str();
    }
  }
  for (std::size_t i = 0; i + m <= n; ++i) {
    const Interval occ{i, i + m - 1};
    const auto hits = std::count_if(
        w.begin(), w.end(), [&](const Interval& x) { return x.contains(occ); });
    if (hits != 1) {
      err << "occurrence at " << i << " lies in " << hits << " windows";
      return err.str();
    }
  }
  return {};
}

}  // namespace dppm
