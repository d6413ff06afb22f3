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

// epsilon-differentially private k-mismatch pattern matching.
//
// Neighbouring texts differ in one position; the pattern is public. Every
// matcher is built from the below-threshold sparse vector query and records
// its privacy spending in a BudgetLedger. The window-based matchers process
// their windows independently, each window drawing from a source forked from
// the query source by window index, so results do not depend on whether the
// windows run serially or under OpenMP.

#ifndef DPPM_MATCHERS_H_
#define DPPM_MATCHERS_H_

#include <cstddef>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "dppm/budget.h"
#include "dppm/noise.h"
#include "dppm/parallel.h"
#include "dppm/pattern_analysis.h"
#include "dppm/text.h"

namespace dppm {

struct MatchQuery {
  Pattern pattern;
  std::size_t k = 0;
  double epsilon = 1.0;
  double beta = 0.1;

  // Throws std::invalid_argument unless k <= m <= n, epsilon > 0 and
  // 0 < beta < 1.
  void validate(std::size_t n) const;
};

struct ExistenceOutcome {
  bool answer = false;
  std::optional<std::size_t> witness;  // present iff answer
};

struct CountOutcome {
  std::size_t count = 0;  // clamped to [0, n - m + 1]
  std::optional<std::size_t> witness;
  std::size_t raw_count = 0;  // sum of per-window counts before clamping
};

struct ReportOutcome {
  std::vector<std::size_t> positions;  // sorted, unique, within [0, n - m]
};

// Test hooks and execution control. Production entry points (match_auto and
// the CLI) always use the defaults.
struct MatcherOptions {
  // Replaces the noise-calibrated threshold; lets zero-noise tests pin
  // Thresh = k, which the real thresholds make degenerate at small n.
  std::optional<double> threshold_override;
  // Whether report_periodic / count_nonperiodic re-verify the regime
  // hypothesis on the public pattern.
  bool check_hypothesis = true;
  Execution execution = Execution::kParallel;
};

// Thresholds and error bounds of the individual algorithms.
namespace bounds {

// Per-window cap on counted occurrences in the non-periodic regime.
std::size_t window_cap(std::size_t k);

double existence_threshold(std::size_t n, std::size_t m, std::size_t k,
                           double epsilon, double beta);
// Additive error of the existence matcher:
// 16 (ln(n - m + 1) + ln(2/beta)) / epsilon.
double existence_error(std::size_t n, std::size_t m, double epsilon,
                       double beta);

double periodic_threshold(std::size_t n, std::size_t m, std::size_t k,
                          double epsilon, double beta);
// Every reported position lies within (1 + 7) k + 576 ln(6n/beta) / epsilon.
double periodic_report_bound(std::size_t n, std::size_t k, double epsilon,
                             double beta);

double nonperiodic_threshold(std::size_t n, std::size_t m, std::size_t k,
                             double epsilon, double beta);
// gamma = 32 * 1152 (ln m + ln(2 (n/m) 1152 k / beta)) / epsilon.
double nonperiodic_gamma(std::size_t n, std::size_t m, std::size_t k,
                         double epsilon, double beta);

}  // namespace bounds

// One below-threshold (sparse vector) query: Thresh~ = Thresh + Lap(2/eps);
// returns the first i with d_i + Lap(4/eps) <= Thresh~, or nullopt.
std::optional<std::size_t> below_thresh(SymbolView text, SymbolView pattern,
                                        double threshold, double epsilon,
                                        NoiseSource& noise);

// As above with epsilon = charge.share * ledger.cap(), charging the ledger.
std::optional<std::size_t> below_thresh(SymbolView text, SymbolView pattern,
                                        double threshold, const Charge& charge,
                                        NoiseSource& noise,
                                        BudgetLedger& ledger);

ExistenceOutcome existence(SymbolView text, const MatchQuery& query,
                           NoiseSource& noise, BudgetLedger& ledger,
                           const MatcherOptions& options = {});

// Reporting for patterns close to Q^inf with a short primitive Q.
ReportOutcome report_periodic(SymbolView text, const MatchQuery& query,
                              const PeriodicCandidate& candidate,
                              NoiseSource& noise, BudgetLedger& ledger,
                              const MatcherOptions& options = {});

// Counting for patterns with no close short period; requires k >= 1.
CountOutcome count_nonperiodic(SymbolView text, const MatchQuery& query,
                               NoiseSource& noise, BudgetLedger& ledger,
                               const MatcherOptions& options = {});

// count_nonperiodic with big_k in place of k; requires query.k < big_k.
CountOutcome count_smallk(SymbolView text, const MatchQuery& query,
                          std::size_t big_k, NoiseSource& noise,
                          BudgetLedger& ledger,
                          const MatcherOptions& options = {});

// All positions [0, n - m]; independent of the text, so free of charge.
ReportOutcome trivial_all(SymbolView text, const MatchQuery& query);

using Outcome = std::variant<ExistenceOutcome, CountOutcome, ReportOutcome>;

enum class MatchVariant { kExistence, kCount, kReport, kAuto };

std::string_view variant_name(MatchVariant variant);
std::optional<MatchVariant> parse_variant(std::string_view name);

struct MatchResult {
  // Absent for the existence variant, which needs no dispatch.
  std::optional<DispatchDecision> decision;
  Outcome outcome;
  BudgetLedger ledger;

  std::string_view regime_label() const;
};

// Dispatches on the public pattern and runs the selected matcher.
MatchResult match_auto(SymbolView text, const MatchQuery& query,
                       NoiseSource& noise,
                       Execution execution = Execution::kParallel);

// Front door used by the CLI. kCount accepts a reporting regime and derives
// the count from the reported set; kReport throws std::invalid_argument when
// the dispatched regime only supports counting.
MatchResult run_match(SymbolView text, const MatchQuery& query,
                      MatchVariant variant, NoiseSource& noise,
                      Execution execution = Execution::kParallel);

}  // namespace dppm

#endif  // DPPM_MATCHERS_H_
