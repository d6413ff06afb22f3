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

#include "dppm/matchers.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "dppm/budget.h"
#include "oracles.h"

namespace dppm {
namespace {

using Positions = std::vector<std::size_t>;

MatchQuery query(const std::string& p, std::size_t k, double eps = 1.0,
                 double beta = 0.1) {
  return MatchQuery{Pattern(p), k, eps, beta};
}

MatcherOptions pinned(double threshold, bool check = true) {
  MatcherOptions o;
  o.threshold_override = threshold;
  o.check_hypothesis = check;
  return o;
}

std::string repeat(const std::string& s, std::size_t times) {
  std::string out;
  for (std::size_t i = 0; i < times; ++i) out += s;
  return out;
}

TEST(MatchQuery, ValidateNamesTheViolatedPrecondition) {
  try {
    query("abra", 5).validate(10);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("k = 5"), std::string::npos);
  }
  EXPECT_THROW(query("abra", 1).validate(3), std::invalid_argument);
  EXPECT_THROW(query("abra", 1, 0.0).validate(10), std::invalid_argument);
  EXPECT_THROW(query("abra", 1, 1.0, 1.0).validate(10), std::invalid_argument);
  EXPECT_NO_THROW(query("abra", 4).validate(4));
}

TEST(Bounds, ClosedForms) {
  EXPECT_NEAR(bounds::existence_threshold(100, 4, 0, 1.0, 0.1),
              8.0 * (std::log(97.0) + std::log(20.0)), 1e-9);
  EXPECT_NEAR(bounds::existence_error(5000, 64, 1.0, 0.1),
              16.0 * (std::log(4937.0) + std::log(20.0)), 1e-9);
  EXPECT_NEAR(bounds::periodic_threshold(4096, 256, 2, 2.0, 0.1),
              2.0 + 24.0 * (std::log(128.0) + std::log(12.0 * 16.0 / 0.1)),
              1e-9);
  EXPECT_NEAR(bounds::periodic_report_bound(4096, 2, 2.0, 0.1),
              16.0 + 288.0 * std::log(6.0 * 4096 / 0.1), 1e-9);
  const double log_term = std::log(64.0) + std::log(2.0 * 64.0 * 2304.0 / 0.1);
  EXPECT_NEAR(bounds::nonperiodic_threshold(4096, 64, 2, 2.0, 0.1),
              2.0 + 8.0 * 2304.0 * log_term, 1e-6);
  EXPECT_NEAR(bounds::nonperiodic_gamma(4096, 64, 2, 2.0, 0.1),
              16.0 * 1152.0 * log_term, 1e-6);
  EXPECT_EQ(bounds::window_cap(3), 3456u);
}

TEST(BelowThresh, ZeroNoiseExamples) {
  NoiseSource zero = NoiseSource::zero();
  const Text t("abracadabra");
  const Text p("abra");
  EXPECT_EQ(below_thresh(t, p, 1.0, 1.0, zero), std::optional<std::size_t>(0));
  EXPECT_EQ(below_thresh(t, p, 2.5, 1.0, zero), std::optional<std::size_t>(0));
  EXPECT_EQ(below_thresh(Text("bracadabra"), p, 2.5, 1.0, zero),
            std::optional<std::size_t>(6));
  EXPECT_EQ(below_thresh(Text("aaaa"), Text("bb"), 1.0, 1.0, zero),
            std::nullopt);
}

TEST(BelowThresh, Preconditions) {
  NoiseSource zero = NoiseSource::zero();
  EXPECT_THROW(below_thresh(Text("ab"), Text("abc"), 1.0, 1.0, zero),
               std::invalid_argument);
  EXPECT_THROW(below_thresh(Text("abc"), Text("ab"), 1.0, 0.0, zero),
               std::invalid_argument);
  BudgetLedger ledger(3, 1.0);
  EXPECT_THROW(below_thresh(Text("abc"), Text("ab"), 1.0,
                            Charge{{0, 1}, Share(1)}, zero, ledger),
               std::invalid_argument);
}

TEST(BelowThresh, ZeroNoiseOracleEquivalenceExhaustive) {
  NoiseSource zero = NoiseSource::zero();
  for (std::size_t n = 1; n <= 10; ++n) {
    for (const auto& s : oracle::all_strings(n, "ab")) {
      for (std::size_t m = 1; m <= std::min<std::size_t>(4, n); ++m) {
        for (const auto& p : oracle::all_strings(m, "ab")) {
          for (std::size_t th = 0; th <= m; ++th) {
            const auto want =
                oracle::first_within(s, p, static_cast<double>(th));
            ASSERT_EQ(below_thresh(Text(s), Text(p), static_cast<double>(th),
                                   1.0, zero),
                      want)
                << s << " " << p << " " << th;
          }
        }
      }
    }
  }
}

TEST(BelowThresh, ChargesTheWholeSpan) {
  NoiseSource src = NoiseSource::standard(1);
  BudgetLedger ledger(8, 2.0);
  below_thresh(Text("abcdefgh").view().subspan(2, 4), Text("cd"), 1.0,
               Charge{{2, 5}, Share(1, 2)}, src, ledger);
  EXPECT_EQ(ledger.share_at(1), Share(0));
  EXPECT_EQ(ledger.share_at(2), Share(1, 2));
  EXPECT_EQ(ledger.share_at(5), Share(1, 2));
  EXPECT_EQ(ledger.share_at(6), Share(0));
  EXPECT_DOUBLE_EQ(ledger.max_epsilon(), 1.0);
}

TEST(BelowThresh, DrawsThresholdNoiseFirst) {
  NoiseSource rec = NoiseSource::recording(3);
  below_thresh(Text("aaaa"), Text("bb"), -1000.0, 1.0, rec);
  // No hit: one threshold draw and one draw per window.
  EXPECT_EQ(rec.draw_log().size(), 4u);
  NoiseSource replay = NoiseSource::standard(3);
  EXPECT_EQ(replay.laplace(LaplaceScale(2.0)), rec.draw_log()[0]);
}

TEST(Existence, ZeroNoiseFindsExactOccurrence) {
  NoiseSource zero = NoiseSource::zero();
  const Text s("xxxxxabraxxxx");
  BudgetLedger ledger(s.size(), 1.0);
  auto out = existence(s, query("abra", 0), zero, ledger, pinned(0.0));
  EXPECT_TRUE(out.answer);
  EXPECT_EQ(out.witness, std::optional<std::size_t>(5));
  // Real threshold: the witness is at or before the occurrence.
  BudgetLedger ledger2(s.size(), 1.0);
  auto real = existence(s, query("abra", 0), zero, ledger2);
  ASSERT_TRUE(real.answer);
  EXPECT_LE(*real.witness, 5u);
}

TEST(Existence, SmallTextIsForcedYes) {
  NoiseSource zero = NoiseSource::zero();
  const Text s(std::string(100, 'a'));
  const double thresh = bounds::existence_threshold(100, 4, 0, 1.0, 0.1);
  EXPECT_NEAR(thresh, 60.6, 0.1);
  EXPECT_GE(thresh, 4.0);
  BudgetLedger ledger(100, 1.0);
  auto out = existence(s, query("bbbb", 0), zero, ledger);
  EXPECT_TRUE(out.answer);
  EXPECT_EQ(out.witness, std::optional<std::size_t>(0));
}

TEST(Existence, DisjointAlphabetAnswersNo) {
  // At n = 1e6, m = 1e4 the threshold is about 134 < m; the run below uses
  // n = 1e5, m = 1e3 (threshold about 116) to stay fast.
  EXPECT_NEAR(bounds::existence_threshold(1000000, 10000, 0, 1.0, 0.1), 134.6,
              0.5);
  const std::size_t n = 100000;
  const std::size_t m = 1000;
  EXPECT_LT(bounds::existence_threshold(n, m, 0, 1.0, 0.1),
            static_cast<double>(m));
  NoiseSource zero = NoiseSource::zero();
  BudgetLedger ledger(n, 1.0);
  auto out = existence(Text(std::string(n, 'a')),
                       query(std::string(m, 'b'), 0), zero, ledger);
  EXPECT_FALSE(out.answer);
  EXPECT_FALSE(out.witness);
}

TEST(Existence, ChargesEveryPositionExactlyEpsilon) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 10 + rng() % 200;
    const std::size_t m = 1 + rng() % 10;
    const Text s(oracle::random_string(rng, n, "ab"));
    const double eps = 0.1 + static_cast<double>(rng() % 30) / 10.0;
    NoiseSource src = NoiseSource::standard(rng());
    BudgetLedger ledger(n, eps);
    auto q = query(oracle::random_string(rng, m, "ab"), rng() % (m + 1), eps);
    auto out = existence(s, q, src, ledger);
    EXPECT_EQ(out.answer, out.witness.has_value());
    for (const auto& share : ledger.shares()) EXPECT_EQ(share, Share(1));
  }
}

TEST(ReportPeriodic, ZeroNoiseEvenPositions) {
  const Text s(repeat("ab", 20));
  const auto q = query(repeat("ab", 4), 0);
  const PeriodicCandidate cand{2, Text("ab"), 0};
  NoiseSource zero = NoiseSource::zero();
  BudgetLedger ledger(s.size(), 1.0);
  auto out = report_periodic(s, q, cand, zero, ledger, pinned(0.0, false));
  Positions even;
  for (std::size_t i = 0; i <= 32; i += 2) even.push_back(i);
  EXPECT_EQ(out.positions, even);
  EXPECT_EQ(out.positions, exact_report(s, q.pattern, 0));
}

TEST(ReportPeriodic, NoForwardHitMeansNothingReported) {
  const Text s(std::string(40, 'c'));
  const auto q = query(repeat("ab", 4), 0);
  NoiseSource zero = NoiseSource::zero();
  BudgetLedger ledger(s.size(), 1.0);
  auto out = report_periodic(s, q, PeriodicCandidate{2, Text("ab"), 0}, zero,
                             ledger, pinned(0.0, false));
  EXPECT_TRUE(out.positions.empty());
}

TEST(ReportPeriodic, RejectsBadCandidatesAndHypothesis) {
  const Text s(repeat("ab", 20));
  const auto q = query(repeat("ab", 4), 0);
  NoiseSource zero = NoiseSource::zero();
  BudgetLedger ledger(s.size(), 1.0);
  EXPECT_THROW(report_periodic(s, q, PeriodicCandidate{2, Text("ba"), 0},
                               zero, ledger, pinned(0.0, false)),
               std::invalid_argument);
  EXPECT_THROW(report_periodic(s, q, PeriodicCandidate{2, Text("ab"), 0},
                               zero, ledger),
               std::invalid_argument);  // q > m / (32 C)
  EXPECT_THROW(report_periodic(Text("abab"), query("a", 0),
                               PeriodicCandidate{1, Text("a"), 0}, zero,
                               ledger),
               std::invalid_argument);
}

TEST(ReportPeriodic, ZeroNoiseCompleteOnCorruptedPeriodicText) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 50; ++t) {
    const std::string root = t % 2 ? "ab" : "abc";
    const std::size_t n = 60 + rng() % 200;
    const std::size_t m = 8 + rng() % 24;
    std::string s = oracle::power_prefix(root, n);
    for (int c = 0; c < 3; ++c) s[rng() % n] = 'z';
    const std::size_t k = 1 + rng() % 2;
    const auto q = query(oracle::power_prefix(root, m), k);
    NoiseSource zero = NoiseSource::zero();
    BudgetLedger ledger(n, 1.0);
    const PeriodicCandidate cand{root.size(), Text(root), 0};
    auto out = report_periodic(Text(s), q, cand, zero, ledger,
                               pinned(static_cast<double>(k), false));
    for (auto pos : oracle::report_within(s, q.pattern.text().to_string(), k)) {
      EXPECT_TRUE(std::binary_search(out.positions.begin(),
                                     out.positions.end(), pos))
          << "missing " << pos;
    }
    EXPECT_TRUE(std::is_sorted(out.positions.begin(), out.positions.end()));
    EXPECT_EQ(std::adjacent_find(out.positions.begin(), out.positions.end()),
              out.positions.end());
    for (auto pos : out.positions) EXPECT_LE(pos, n - m);
  }
}

TEST(ReportPeriodic, BudgetWithinEpsilonAndRangeChecked) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 20 + rng() % 300;
    const std::size_t m = 2 + rng() % 19;
    const std::string s = oracle::random_string(rng, n, "ab");
    const auto q = query(oracle::power_prefix("ab", m), 1 + rng() % 2, 0.7);
    NoiseSource src = NoiseSource::standard(rng());
    BudgetLedger ledger(n, 0.7);
    auto out = report_periodic(Text(s), q, PeriodicCandidate{2, Text("ab"), 0},
                               src, ledger, pinned(2.0, false));
    EXPECT_TRUE(ledger.within_cap());
    EXPECT_LE(ledger.max_epsilon(), 0.7 + 1e-12);
    for (auto share : ledger.shares()) EXPECT_GT(share, Share(0));
    for (auto pos : out.positions) EXPECT_LE(pos, n - m);
  }
}

TEST(CountNonPeriodic, ZeroNoisePinnedThreshold) {
  NoiseSource zero = NoiseSource::zero();
  const Text s("abracadabra");
  BudgetLedger ledger(s.size(), 1.0);
  auto out = count_nonperiodic(s, query("abra", 1), zero, ledger, pinned(1.0));
  EXPECT_EQ(out.count, 2u);
  EXPECT_EQ(out.count, exact_count(s, Text("abra"), 1));
  ASSERT_TRUE(out.witness);
  EXPECT_TRUE(*out.witness == 0 || *out.witness == 7);

  BudgetLedger ledger2(12, 1.0);
  auto none = count_nonperiodic(Text("xyzxyzxyzxyz"), query("abra", 1), zero,
                                ledger2, pinned(1.0));
  EXPECT_EQ(none.count, 0u);
  EXPECT_FALSE(none.witness);
}

TEST(CountNonPeriodic, RejectsZeroK) {
  NoiseSource zero = NoiseSource::zero();
  BudgetLedger ledger(11, 1.0);
  EXPECT_THROW(
      count_nonperiodic(Text("abracadabra"), query("abra", 0), zero, ledger),
      std::invalid_argument);
}

TEST(CountNonPeriodic, RejectsPeriodicPatternWhenChecked) {
  NoiseSource zero = NoiseSource::zero();
  const std::string p = repeat("ab", 200);  // q_max = 400 / 128 = 3
  BudgetLedger ledger(1000, 1.0);
  EXPECT_THROW(count_nonperiodic(Text(std::string(1000, 'a')), query(p, 1),
                                 zero, ledger),
               std::invalid_argument);
}

TEST(CountNonPeriodic, ZeroNoiseEqualsExactCount) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 10 + rng() % 300;
    const std::size_t m = 1 + rng() % 12;
    const std::string s = oracle::random_string(rng, n, "ab");
    const std::string p = oracle::random_string(rng, m, "ab");
    const std::size_t k = 1 + rng() % m;
    NoiseSource zero = NoiseSource::zero();
    BudgetLedger ledger(n, 1.0);
    auto out = count_nonperiodic(Text(s), query(p, k), zero, ledger,
                                 pinned(static_cast<double>(k), false));
    EXPECT_EQ(out.count, oracle::count_within(s, p, k));
    if (out.count > 0) {
      ASSERT_TRUE(out.witness);
      EXPECT_LE(oracle::hamming(s.substr(*out.witness, m), p), k);
    }
  }
}

TEST(CountNonPeriodic, WindowCapBoundsEachWindow) {
  std::mt19937_64 rng(10);
  const std::size_t m = 1200;
  const std::size_t n = 2400;  // windows [0, 2398] and tail [1200, 2399]
  const std::string p = oracle::random_string(rng, m, "acgt");
  const std::string s = oracle::random_string(rng, n, "acgt");
  NoiseSource zero = NoiseSource::zero();
  BudgetLedger ledger(n, 1.0);
  auto out = count_nonperiodic(Text(s), query(p, 1), zero, ledger,
                               pinned(static_cast<double>(m), false));
  EXPECT_EQ(out.raw_count, bounds::window_cap(1) + 1);
  EXPECT_EQ(out.count, out.raw_count);
  EXPECT_TRUE(ledger.within_cap());
}

TEST(CountNonPeriodic, CountClampedToWindowPositions) {
  NoiseSource zero = NoiseSource::zero();
  const std::string s(30, 'a');
  BudgetLedger ledger(30, 1.0);
  auto out = count_nonperiodic(Text(s), query("ab", 1), zero, ledger,
                               pinned(2.0, false));
  EXPECT_EQ(out.count, 29u);
  EXPECT_LE(out.count, out.raw_count);
}

TEST(CountNonPeriodic, BudgetWithinEpsilon) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 20 + rng() % 400;
    const std::size_t m = 1 + rng() % 16;
    const std::string s = oracle::random_string(rng, n, "ab");
    const std::string p = oracle::random_string(rng, m, "ab");
    NoiseSource src = NoiseSource::standard(rng());
    BudgetLedger ledger(n, 1.3);
    // A low pinned threshold keeps hits frequent, exercising many charges.
    count_nonperiodic(Text(s), query(p, 1, 1.3), src, ledger,
                      pinned(static_cast<double>(m) / 2.0, false));
    EXPECT_TRUE(ledger.within_cap());
    EXPECT_LE(ledger.max_epsilon(), 1.3 + 1e-9);
  }
}

TEST(CountSmallK, DelegatesWithBigK) {
  std::mt19937_64 rng(13);
  const std::string s = oracle::random_string(rng, 300, "ab");
  const std::string p = oracle::random_string(rng, 8, "ab");
  const std::size_t big_k = 3;
  for (int seed = 0; seed < 5; ++seed) {
    NoiseSource a = NoiseSource::recording(seed);
    NoiseSource b = NoiseSource::recording(seed);
    BudgetLedger la(300, 1.0);
    BudgetLedger lb(300, 1.0);
    auto x = count_smallk(Text(s), query(p, 1), big_k, a, la, pinned(2.5, false));
    auto y = count_nonperiodic(Text(s), query(p, big_k), b, lb,
                               pinned(2.5, false));
    EXPECT_EQ(x.count, y.count);
    EXPECT_EQ(x.witness, y.witness);
    EXPECT_EQ(a.draw_log(), b.draw_log());
    EXPECT_EQ(la.shares(), lb.shares());
  }
  NoiseSource zero = NoiseSource::zero();
  BudgetLedger l(300, 1.0);
  EXPECT_THROW(count_smallk(Text(s), query(p, 3), 3, zero, l),
               std::invalid_argument);
}

TEST(CountSmallK, ZeroNoiseSandwich) {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 50; ++t) {
    const std::string s = oracle::random_string(rng, 200, "ab");
    const std::string p = oracle::random_string(rng, 10, "ab");
    const std::size_t k = rng() % 3;
    const std::size_t big_k = k + 1 + rng() % 3;
    NoiseSource zero = NoiseSource::zero();
    BudgetLedger ledger(200, 1.0);
    auto out = count_smallk(Text(s), query(p, k), big_k, zero, ledger,
                            pinned(static_cast<double>(big_k), false));
    EXPECT_GE(out.count, oracle::count_within(s, p, k));
    EXPECT_LE(out.count, oracle::count_within(s, p, big_k));
  }
}

TEST(TrivialAll, Examples) {
  EXPECT_EQ(trivial_all(Text("abcdefghij"), query("abcd", 1)).positions,
            (Positions{0, 1, 2, 3, 4, 5, 6}));
  EXPECT_EQ(trivial_all(Text("abcd"), query("abcd", 1)).positions,
            (Positions{0}));
  const Text s("abcdefghij");
  for (auto pos : trivial_all(s, query("zzzz", 1)).positions) {
    EXPECT_LE(hamming_distance(s.view().subspan(pos, 4), Text("zzzz")), 4u);
  }
}

TEST(MatchAuto, RoutesByRegime) {
  // Periodic: m must reach 32 C for a period-2 route; with eps large C is
  // small. C = 96 (ln n + ln 60) / eps.
  const std::size_t n = 2000;
  const double eps = 4000.0;
  const std::string p = repeat("ab", 64);
  const Text s(oracle::power_prefix("ab", n));
  NoiseSource src = NoiseSource::standard(1);
  auto r = match_auto(s, query(p, 1, eps), src);
  ASSERT_TRUE(r.decision);
  EXPECT_EQ(r.decision->regime, Regime::kPeriodicReporting);
  EXPECT_TRUE(std::holds_alternative<ReportOutcome>(r.outcome));
  EXPECT_EQ(r.regime_label(), "PeriodicReporting");
  EXPECT_TRUE(r.ledger.within_cap());

  NoiseSource src2 = NoiseSource::standard(1);
  auto t = match_auto(Text("abcdef"), query("a", 0), src2);
  EXPECT_EQ(t.decision->regime, Regime::kTrivialFallback);
  EXPECT_EQ(std::get<ReportOutcome>(t.outcome).positions,
            (Positions{0, 1, 2, 3, 4, 5}));
  EXPECT_EQ(t.ledger.max_epsilon(), 0.0);
  EXPECT_EQ(src2.draws(), 0u);

  NoiseSource src3 = NoiseSource::standard(1);
  auto c = match_auto(Text(std::string(500, 'x')), query("abcdefgh", 1), src3);
  EXPECT_EQ(c.decision->regime, Regime::kNonPeriodicCounting);
  EXPECT_TRUE(std::holds_alternative<CountOutcome>(c.outcome));
}

TEST(MatchAuto, DeterministicForFixedSeed) {
  std::mt19937_64 rng(15);
  const std::string s = oracle::random_string(rng, 3000, "abcd");
  const auto q = query(oracle::random_string(rng, 40, "abcd"), 2, 3.0);
  NoiseSource a = NoiseSource::standard(44);
  NoiseSource b = NoiseSource::standard(44);
  auto x = match_auto(Text(s), q, a);
  auto y = match_auto(Text(s), q, b);
  EXPECT_EQ(std::get<CountOutcome>(x.outcome).count,
            std::get<CountOutcome>(y.outcome).count);
  EXPECT_EQ(std::get<CountOutcome>(x.outcome).witness,
            std::get<CountOutcome>(y.outcome).witness);
  EXPECT_EQ(x.ledger.shares(), y.ledger.shares());
}

TEST(Parallelism, WindowLoopsMatchSerial) {
  std::mt19937_64 rng(16);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 500 + rng() % 3000;
    const std::string s = oracle::random_string(rng, n, "ab");
    const std::size_t m = 4 + rng() % 30;
    const std::uint64_t seed = rng();
    for (bool periodic : {true, false}) {
      MatcherOptions ser = pinned(static_cast<double>(m) / 3.0, false);
      MatcherOptions par = ser;
      ser.execution = Execution::kSerial;
      par.execution = Execution::kParallel;
      NoiseSource a = NoiseSource::recording(seed);
      NoiseSource b = NoiseSource::recording(seed);
      BudgetLedger la(n, 1.0);
      BudgetLedger lb(n, 1.0);
      if (periodic) {
        const auto q = query(oracle::power_prefix("ab", m), 1);
        const PeriodicCandidate cand{2, Text("ab"), 0};
        auto x = report_periodic(Text(s), q, cand, a, la, ser);
        auto y = report_periodic(Text(s), q, cand, b, lb, par);
        EXPECT_EQ(x.positions, y.positions);
      } else {
        const auto q = query(oracle::random_string(rng, m, "ab"), 1);
        auto x = count_nonperiodic(Text(s), q, a, la, ser);
        auto y = count_nonperiodic(Text(s), q, b, lb, par);
        EXPECT_EQ(x.count, y.count);
        EXPECT_EQ(x.witness, y.witness);
      }
      EXPECT_EQ(a.draw_log(), b.draw_log());
      EXPECT_EQ(la.shares(), lb.shares());
    }
  }
}

TEST(RunMatch, Variants) {
  const Text s("abracadabra");
  NoiseSource a = NoiseSource::standard(7);
  auto e = run_match(s, query("abra", 1), MatchVariant::kExistence, a);
  EXPECT_FALSE(e.decision);
  EXPECT_EQ(e.regime_label(), "Existence");
  EXPECT_TRUE(std::holds_alternative<ExistenceOutcome>(e.outcome));

  NoiseSource b = NoiseSource::standard(7);
  auto c = run_match(Text("abcdef"), query("a", 0), MatchVariant::kCount, b);
  const auto& count = std::get<CountOutcome>(c.outcome);
  EXPECT_EQ(count.count, 6u);
  EXPECT_EQ(count.witness, std::optional<std::size_t>(0));

  NoiseSource d = NoiseSource::standard(7);
  EXPECT_THROW(run_match(s, query("abra", 1), MatchVariant::kReport, d),
               std::invalid_argument);

  EXPECT_EQ(parse_variant("auto"), MatchVariant::kAuto);
  EXPECT_EQ(parse_variant("bogus"), std::nullopt);
}

TEST(BudgetLedger, ExactRationalAccounting) {
  BudgetLedger ledger(10, 2.0);
  for (int i = 0; i < 6; ++i) ledger.charge({{0, 9}, Share(1, 6)});
  EXPECT_EQ(ledger.max_share(), Share(1));
  EXPECT_TRUE(ledger.within_cap());
  EXPECT_DOUBLE_EQ(ledger.max_epsilon(), 2.0);
  ledger.charge({{3, 3}, Share(1, 1000000)});
  EXPECT_FALSE(ledger.within_cap());
  EXPECT_EQ(ledger.charges(), 7u);
  EXPECT_THROW(ledger.charge({{5, 10}, Share(1)}), std::out_of_range);
  EXPECT_THROW(ledger.charge({{0, 1}, Share(-1)}), std::invalid_argument);
  EXPECT_THROW(BudgetLedger(3, 0.0), std::invalid_argument);
}

}  // namespace
}  // namespace dppm
