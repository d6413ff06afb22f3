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

#include <gtest/gtest.h>

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "oracles.h"

namespace dppm {
namespace {

using Positions = std::vector<std::size_t>;

TEST(HammingDistance, Examples) {
  EXPECT_EQ(hamming_distance(Text("abra"), Text("abra")), 0u);
  EXPECT_EQ(hamming_distance(Text("abc"), Text("abd")), 1u);
  EXPECT_EQ(hamming_distance(Text("brac"), Text("abra")), 4u);
}

TEST(HammingDistance, LengthMismatchThrows) {
  EXPECT_THROW(hamming_distance(Text("ab"), Text("abc")),
               std::invalid_argument);
}

TEST(HammingDistance, MetricAxiomsExhaustive) {
  for (std::size_t len = 0; len <= 6; ++len) {
    const auto all = oracle::all_strings(len, "ab");
    for (const auto& a : all) {
      for (const auto& b : all) {
        const auto ab = hamming_distance(Text(a), Text(b));
        EXPECT_EQ(ab, hamming_distance(Text(b), Text(a)));
        EXPECT_EQ(ab == 0, a == b);
        if (len > 4) continue;  // the triple loop is cubic
        for (const auto& c : all) {
          EXPECT_LE(hamming_distance(Text(a), Text(c)),
                    ab + hamming_distance(Text(b), Text(c)));
        }
      }
    }
  }
}

TEST(SlidingDistances, Examples) {
  EXPECT_EQ(sliding_distances(Text("abracadabra"), Text("abra")),
            (Positions{0, 4, 3, 3, 3, 3, 4, 0}));
  EXPECT_EQ(sliding_distances(Text("abra"), Text("abra")), (Positions{0}));
  EXPECT_EQ(sliding_distances(Text("aaaa"), Text("bb")),
            (Positions{2, 2, 2}));
}

TEST(SlidingDistances, PatternLongerThanTextThrows) {
  EXPECT_THROW(sliding_distances(Text("ab"), Text("abc")),
               std::invalid_argument);
  EXPECT_THROW(sliding_distances_reference(Text("ab"), Text("abc")),
               std::invalid_argument);
}

TEST(SlidingDistances, MatchesBruteForceOnRandomInputs) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 80;
    const std::size_t m = 1 + rng() % n;
    const auto s = oracle::random_string(rng, n, "abc");
    const auto p = oracle::random_string(rng, m, "abc");
    const auto expected = oracle::sliding(s, p);
    EXPECT_EQ(sliding_distances(Text(s), Text(p), Execution::kSerial),
              expected);
    EXPECT_EQ(sliding_distances(Text(s), Text(p), Execution::kParallel),
              expected);
    EXPECT_EQ(sliding_distances_reference(Text(s), Text(p)), expected);
    // Each entry equals the distance on the extracted window.
    const auto d = sliding_distances(Text(s), Text(p));
    for (std::size_t i = 0; i < d.size(); ++i) {
      EXPECT_EQ(d[i], hamming_distance(Text(s.substr(i, m)), Text(p)));
    }
  }
}

TEST(SlidingDistances, ParallelEqualsSerialOnLargeInput) {
  std::mt19937_64 rng(5);
  const auto s = oracle::random_string(rng, 20000, "acgt");
  const auto p = oracle::random_string(rng, 300, "acgt");
  EXPECT_EQ(sliding_distances(Text(s), Text(p), Execution::kParallel),
            sliding_distances_reference(Text(s), Text(p)));
}

TEST(ExactCount, Examples) {
  const Text s("abracadabra");
  const Text p("abra");
  EXPECT_EQ(exact_count(s, p, 0), 2u);
  EXPECT_EQ(exact_count(s, p, 3), 6u);
  EXPECT_EQ(exact_count(s, p, 4), s.size() - p.size() + 1);
}

TEST(ExactCount, MonotoneAndFullAtM) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 40;
    const std::size_t m = 1 + rng() % n;
    const Text s(oracle::random_string(rng, n, "ab"));
    const Text p(oracle::random_string(rng, m, "ab"));
    std::size_t prev = 0;
    for (std::size_t x = 0; x <= m; ++x) {
      const auto c = exact_count(s, p, x);
      EXPECT_GE(c, prev);
      EXPECT_EQ(c, oracle::count_within(s.to_string(), p.to_string(), x));
      prev = c;
    }
    EXPECT_EQ(prev, n - m + 1);
  }
}

TEST(ExactReport, Examples) {
  EXPECT_EQ(exact_report(Text("abracadabra"), Text("abra"), 1),
            (Positions{0, 7}));
  EXPECT_EQ(exact_report(Text("abcdef"), Text("ab"), 2),
            (Positions{0, 1, 2, 3, 4}));
  EXPECT_TRUE(exact_report(Text("xyzxyz"), Text("ab"), 1).empty());
}

TEST(ExactReport, MatchesBruteForce) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 40;
    const std::size_t m = 1 + rng() % n;
    const auto s = oracle::random_string(rng, n, "ab");
    const auto p = oracle::random_string(rng, m, "ab");
    const std::size_t x = rng() % (m + 1);
    EXPECT_EQ(exact_report(Text(s), Text(p), x),
              oracle::report_within(s, p, x));
  }
}

TEST(Reverse, Examples) {
  EXPECT_EQ(reverse(Text("abc")), Text("cba"));
  EXPECT_EQ(reverse(Text("")), Text(""));
  const Text s("abracadabra");
  EXPECT_EQ(reverse(reverse(s)), s);
}

TEST(TextType, SubstrAndPattern) {
  const Text s("abracadabra");
  EXPECT_EQ(s.substr({1, 4}), Text("brac"));
  EXPECT_THROW(s.substr({5, 11}), std::out_of_range);
  EXPECT_THROW(Pattern(Text("")), std::invalid_argument);
  EXPECT_EQ(Pattern("ab").size(), 2u);
}

std::vector<Interval> windows_of(const std::vector<oracle::Window>& w) {
  std::vector<Interval> out;
  for (const auto& x : w) out.push_back({x.a, x.b});
  return out;
}

TEST(PeriodicCover, Examples) {
  EXPECT_EQ(periodic_cover(10, 4).windows,
            (std::vector<Interval>{{0, 4}, {2, 6}, {4, 8}, {6, 9}}));
  EXPECT_EQ(periodic_cover(7, 7).windows, (std::vector<Interval>{{0, 6}}));
  EXPECT_LE(static_cast<double>(periodic_cover(10, 4).windows.size()),
            3.0 * 10 / 4);
}

TEST(PeriodicCover, RejectsDegenerateInputs) {
  EXPECT_THROW(periodic_cover(10, 1), std::invalid_argument);
  EXPECT_THROW(periodic_cover(3, 4), std::invalid_argument);
}

TEST(CountingCover, Examples) {
  EXPECT_EQ(counting_cover(10, 4).windows,
            (std::vector<Interval>{{0, 6}, {4, 9}}));
  EXPECT_EQ(counting_cover(5, 5).windows, (std::vector<Interval>{{0, 4}}));
  const auto family = counting_cover(10, 4);
  for (std::size_t i = 0; i <= 6; ++i) {
    int hits = 0;
    for (const auto& w : family.windows) hits += w.contains(Interval{i, i + 3});
    EXPECT_EQ(hits, 1) << "occurrence " << i;
  }
  EXPECT_THROW(counting_cover(3, 4), std::invalid_argument);
}

TEST(WindowFamilies, ExhaustiveSweep) {
  for (std::size_t n = 2; n <= 64; ++n) {
    for (std::size_t m = 2; m <= n; ++m) {
      const auto periodic = periodic_cover(n, m);
      EXPECT_EQ(check_window_family(periodic, n, m), "")
          << "periodic n=" << n << " m=" << m;
      EXPECT_EQ(periodic.windows, windows_of(oracle::periodic_cover_def(n, m)));
      EXPECT_LE(static_cast<double>(periodic.windows.size()),
                3.0 * static_cast<double>(n) / static_cast<double>(m));

      const auto counting = counting_cover(n, m);
      EXPECT_EQ(check_window_family(counting, n, m), "")
          << "counting n=" << n << " m=" << m;
      EXPECT_EQ(counting.windows, windows_of(oracle::counting_cover_def(n, m)));
    }
  }
}

TEST(WindowFamilies, CheckerDetectsBrokenFamilies) {
  WindowFamily gap{CoverKind::kCounting, {{0, 3}, {5, 9}}};
  EXPECT_NE(check_window_family(gap, 10, 2), "");
  WindowFamily doubled{CoverKind::kCounting, {{0, 9}, {0, 9}}};
  EXPECT_NE(check_window_family(doubled, 10, 2), "");
}

TEST(CountingCover, SingleSymbolPattern) {
  const auto family = counting_cover(6, 1);
  EXPECT_EQ(check_window_family(family, 6, 1), "");
}

}  // namespace
}  // namespace dppm
