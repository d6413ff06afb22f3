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

// Strings over the byte alphabet, Hamming distances, exact (non-private)
// matching oracles and the two overlapping window decompositions used by the
// private matchers.

#ifndef DPPM_TEXT_H_
#define DPPM_TEXT_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dppm/parallel.h"

namespace dppm {

using Symbol = std::uint8_t;
using SymbolView = std::span<const Symbol>;

// Closed, 0-indexed interval [first, last] of positions.
struct Interval {
  std::size_t first = 0;
  std::size_t last = 0;

  std::size_t length() const { return last - first + 1; }
  bool contains(std::size_t pos) const { return first <= pos && pos <= last; }
  bool contains(const Interval& other) const {
    return first <= other.first && other.last <= last;
  }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// An owned byte string. Texts may be empty; matchers reject empty input.
class Text {
 public:
  Text() = default;
  explicit Text(std::vector<Symbol> bytes) : bytes_(std::move(bytes)) {}
  explicit Text(std::string_view chars);

  std::size_t size() const { return bytes_.size(); }
  bool empty() const { return bytes_.empty(); }
  Symbol operator[](std::size_t i) const { return bytes_[i]; }

  SymbolView view() const { return bytes_; }
  operator SymbolView() const { return bytes_; }  // NOLINT

  const std::vector<Symbol>& bytes() const { return bytes_; }
  std::vector<Symbol>& mutable_bytes() { return bytes_; }

  // S[a, b]; throws std::out_of_range if the interval leaves the text.
  Text substr(Interval span) const;
  std::string to_string() const;

  friend bool operator==(const Text&, const Text&) = default;

 private:
  std::vector<Symbol> bytes_;
};

// A query pattern. Never empty.
class Pattern {
 public:
  explicit Pattern(Text text);
  explicit Pattern(std::string_view chars) : Pattern(Text(chars)) {}

  std::size_t size() const { return text_.size(); }
  Symbol operator[](std::size_t i) const { return text_[i]; }
  SymbolView view() const { return text_.view(); }
  operator SymbolView() const { return text_.view(); }  // NOLINT
  const Text& text() const { return text_; }

  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  Text text_;
};

// Number of positions where a and b differ. Throws std::invalid_argument on a
// length mismatch.
std::size_t hamming_distance(SymbolView a, SymbolView b);

// d_i = dist_H(S[i, i+m-1], P) for i in [0, n-m]. Throws
// std::invalid_argument when m > n or m == 0.
std::vector<std::size_t> sliding_distances(
    SymbolView text, SymbolView pattern,
    Execution execution = Execution::kParallel);

// Serial reference for sliding_distances.
std::vector<std::size_t> sliding_distances_reference(SymbolView text,
                                                     SymbolView pattern);

// c_x(S, P): number of windows with distance at most x.
std::size_t exact_count(SymbolView text, SymbolView pattern, std::size_t x);

// Sorted start positions of all windows with distance at most x.
std::vector<std::size_t> exact_report(SymbolView text, SymbolView pattern,
                                      std::size_t x);

Text reverse(SymbolView text);

enum class CoverKind { kPeriodic, kCounting };

struct WindowFamily {
  CoverKind kind = CoverKind::kCounting;
  std::vector<Interval> windows;
};

// Windows of length floor(3m/2) - 1 at stride floor(m/2) plus a tail window.
// Every position lies in at most three windows. Requires 2 <= m <= n.
WindowFamily periodic_cover(std::size_t n, std::size_t m);

// Windows S[jm, (j+2)m - 2] plus a tail window. Every position lies in at most
// two windows. Requires 1 <= m <= n.
WindowFamily counting_cover(std::size_t n, std::size_t m);

// Exhaustively checks the WindowFamily invariants for text length n and
// pattern length m; returns an empty string when they hold, else a
// description of the first violation.
std::string check_window_family(const WindowFamily& family, std::size_t n,
                                std::size_t m);

}  // namespace dppm

#endif  // DPPM_TEXT_H_
