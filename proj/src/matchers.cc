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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace dppm {

void MatchQuery::validate(std::size_t n) const {
  const std::size_t m = pattern.size();
  if (m > n) {
    throw std::invalid_argument("pattern length m = " + std::to_string(m) +
                                " exceeds text length n = " +
                                std::to_string(n));
  }
  if (k > m) {
    throw std::invalid_argument("k = " + std::to_string(k) +
                                " exceeds pattern length m = " +
                                std::to_string(m));
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("epsilon must be positive and finite");
  }
  if (!(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("beta must lie in (0, 1)");
  }
}

namespace bounds {

std::size_t window_cap(std::size_t k) { return 1152 * k; }

double existence_threshold(std::size_t n, std::size_t m, std::size_t k,
                           double epsilon, double beta) {
  return static_cast<double>(k) + existence_error(n, m, epsilon, beta) / 2.0;
}

double existence_error(std::size_t n, std::size_t m, double epsilon,
                       double beta) {
  return 16.0 *
         (std::log(static_cast<double>(n - m + 1)) + std::log(2.0 / beta)) /
         epsilon;
}

double periodic_threshold(std::size_t n, std::size_t m, std::size_t k,
                          double epsilon, double beta) {
  const double nm = static_cast<double>(n) / static_cast<double>(m);
  return static_cast<double>(k) +
         48.0 *
             (std::log(static_cast<double>(m) / 2.0) +
              std::log(12.0 * nm / beta)) /
             epsilon;
}

double periodic_report_bound(std::size_t n, std::size_t k, double epsilon,
                             double beta) {
  return 8.0 * static_cast<double>(k) +
         576.0 * std::log(6.0 * static_cast<double>(n) / beta) / epsilon;
}

namespace {

double nonperiodic_log_term(std::size_t n, std::size_t m, std::size_t k,
                            double beta) {
  const double nm = static_cast<double>(n) / static_cast<double>(m);
  return std::log(static_cast<double>(m)) +
         std::log(2.0 * nm * static_cast<double>(window_cap(k)) / beta);
}

}  // namespace

double nonperiodic_threshold(std::size_t n, std::size_t m, std::size_t k,
                             double epsilon, double beta) {
  return static_cast<double>(k) + 16.0 *
                                      static_cast<double>(window_cap(k)) *
                                      nonperiodic_log_term(n, m, k, beta) /
                                      epsilon;
}

double nonperiodic_gamma(std::size_t n, std::size_t m, std::size_t k,
                         double epsilon, double beta) {
  return 32.0 * 1152.0 * nonperiodic_log_term(n, m, k, beta) / epsilon;
}

}  // namespace bounds

namespace {

std::optional<std::size_t> first_below(SymbolView text, SymbolView pattern,
                                       double threshold, double epsilon,
                                       NoiseSource& noise) {
  const std::size_t m = pattern.size();
  const LaplaceScale threshold_scale(2.0 / epsilon);
  const LaplaceScale query_scale(4.0 / epsilon);
  const double noisy_threshold = threshold + noise.laplace(threshold_scale);
  for (std::size_t i = 0; i + m <= text.size(); ++i) {
    std::size_t d = 0;
    for (std::size_t j = 0; j < m; ++j) d += (text[i + j] != pattern[j]);
    if (static_cast<double>(d) + noise.laplace(query_scale) <=
        noisy_threshold) {
      return i;
    }
  }
  return std::nullopt;
}

void check_svt_args(SymbolView text, SymbolView pattern, double epsilon) {
  if (pattern.empty()) throw std::invalid_argument("below_thresh: empty P");
  if (pattern.size() > text.size()) {
    throw std::invalid_argument("below_thresh: |P| > |T|");
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("below_thresh: epsilon must be positive");
  }
}

// Forks one child source per window up front so each window owns its
// randomness regardless of the schedule.
std::vector<NoiseSource> fork_windows(const NoiseSource& noise,
                                      std::size_t count) {
  std::vector<NoiseSource> children;
  children.reserve(count);
  for (std::size_t w = 0; w < count; ++w) children.push_back(noise.fork(w));
  return children;
}

void absorb_windows(NoiseSource& noise, std::vector<NoiseSource>& children) {
  for (auto& child : children) noise.absorb(std::move(child));
}

void apply_charges(BudgetLedger& ledger,
                   const std::vector<std::vector<Charge>>& charges) {
  for (const auto& per_window : charges) {
    for (const auto& c : per_window) ledger.charge(c);
  }
}

void check_ledger(const BudgetLedger& ledger, std::size_t n, double epsilon) {
  if (ledger.size() != n) {
    throw std::invalid_argument("ledger length differs from text length");
  }
  if (ledger.cap() != epsilon) {
    throw std::invalid_argument("ledger cap differs from query epsilon");
  }
}

struct CountWindow {
  std::size_t count = 0;
  std::optional<std::size_t> last_hit;  // window-local
};

// Repeated below-threshold queries over one block; each query scans the
// suffix starting one past the previous hit.
CountWindow count_in_window(SymbolView window, std::size_t window_start,
                            SymbolView pattern, double threshold,
                            std::size_t cap, Share share, double epsilon,
                            NoiseSource& noise, std::vector<Charge>& charges) {
  CountWindow result;
  const std::size_t m = pattern.size();
  std::size_t next = 0;  // first unscanned local position
  while (next + m <= window.size() && result.count < cap) {
    auto suffix = window.subspan(next);
    charges.push_back({{window_start + next, window_start + window.size() - 1},
                       share});
    auto hit = first_below(suffix, pattern, threshold, epsilon, noise);
    if (!hit) break;
    ++result.count;
    result.last_hit = next + *hit;
    next = next + *hit + 1;
  }
  return result;
}

CountOutcome count_with_scale(SymbolView text, const MatchQuery& query,
                              std::size_t scale_k, NoiseSource& noise,
                              BudgetLedger& ledger,
                              const MatcherOptions& options) {
  const std::size_t n = text.size();
  const std::size_t m = query.pattern.size();
  if (scale_k == 0) {
    throw std::invalid_argument(
        "count_nonperiodic: k = 0 leaves the per-window budget undefined");
  }
  if (options.check_hypothesis) {
    const auto q_max = static_cast<std::size_t>(std::floor(
        static_cast<double>(m) / (128.0 * static_cast<double>(scale_k))));
    if (shortest_close_period(query.pattern, scale_k, q_max)) {
      throw std::invalid_argument(
          "count_nonperiodic: pattern has a close short period");
    }
  }

  const std::size_t cap = bounds::window_cap(scale_k);
  const double threshold = options.threshold_override.value_or(
      bounds::nonperiodic_threshold(n, m, scale_k, query.epsilon, query.beta));
  const Share share(1, static_cast<std::int64_t>(2 * cap));
  const double eps_prime = query.epsilon / static_cast<double>(2 * cap);

  const auto family = counting_cover(n, m);
  const auto windows = family.windows.size();
  auto children = fork_windows(noise, windows);
  std::vector<CountWindow> results(windows);
  std::vector<std::vector<Charge>> charges(windows);

  const bool parallel = options.execution == Execution::kParallel;
  const auto count = static_cast<std::int64_t>(windows);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::int64_t w = 0; w < count; ++w) {
    const auto idx = static_cast<std::size_t>(w);
    const Interval span = family.windows[idx];
    results[idx] = count_in_window(text.subspan(span.first, span.length()),
                                   span.first, query.pattern, threshold, cap,
                                   share, eps_prime, children[idx],
                                   charges[idx]);
  }
  absorb_windows(noise, children);
  apply_charges(ledger, charges);

  CountOutcome outcome;
  for (std::size_t w = 0; w < windows; ++w) {
    outcome.raw_count += results[w].count;
    if (!outcome.witness && results[w].last_hit) {
      outcome.witness = family.windows[w].first + *results[w].last_hit;
    }
  }
  outcome.count = std::min(outcome.raw_count, n - m + 1);
  return outcome;
}

}  // namespace

std::optional<std::size_t> below_thresh(SymbolView text, SymbolView pattern,
                                        double threshold, double epsilon,
                                        NoiseSource& noise) {
  check_svt_args(text, pattern, epsilon);
  return first_below(text, pattern, threshold, epsilon, noise);
}

std::optional<std::size_t> below_thresh(SymbolView text, SymbolView pattern,
                                        double threshold, const Charge& charge,
                                        NoiseSource& noise,
                                        BudgetLedger& ledger) {
  const double epsilon = ledger.cap() * to_double(charge.share);
  check_svt_args(text, pattern, epsilon);
  if (charge.span.length() != text.size()) {
    throw std::invalid_argument("below_thresh: charged span != |T|");
  }
  ledger.charge(charge);
  return first_below(text, pattern, threshold, epsilon, noise);
}

ExistenceOutcome existence(SymbolView text, const MatchQuery& query,
                           NoiseSource& noise, BudgetLedger& ledger,
                           const MatcherOptions& options) {
  const std::size_t n = text.size();
  query.validate(n);
  check_ledger(ledger, n, query.epsilon);
  const double threshold = options.threshold_override.value_or(
      bounds::existence_threshold(n, query.pattern.size(), query.k,
                                  query.epsilon, query.beta));
  auto hit = below_thresh(text, query.pattern, threshold,
                          Charge{{0, n - 1}, Share(1)}, noise, ledger);
  return ExistenceOutcome{hit.has_value(), hit};
}

ReportOutcome report_periodic(SymbolView text, const MatchQuery& query,
                              const PeriodicCandidate& candidate,
                              NoiseSource& noise, BudgetLedger& ledger,
                              const MatcherOptions& options) {
  const std::size_t n = text.size();
  const std::size_t m = query.pattern.size();
  query.validate(n);
  check_ledger(ledger, n, query.epsilon);
  if (m < 2) throw std::invalid_argument("report_periodic: requires m >= 2");
  if (candidate.period == 0 || candidate.root.size() != candidate.period) {
    throw std::invalid_argument("report_periodic: malformed candidate");
  }
  if (periodic_distance(query.pattern, candidate.root) != candidate.distance ||
      candidate.distance > 2 * query.k) {
    throw std::invalid_argument(
        "report_periodic: candidate is not within 2k of the pattern");
  }
  if (options.check_hypothesis) {
    const double c = period_scale(query.k, n, query.epsilon, query.beta);
    if (static_cast<double>(candidate.period) * 32.0 * c >
        static_cast<double>(m)) {
      throw std::invalid_argument(
          "report_periodic: period exceeds m / (32 C)");
    }
  }

  const double threshold = options.threshold_override.value_or(
      bounds::periodic_threshold(n, m, query.k, query.epsilon, query.beta));
  const Share share(1, 6);
  const double eps_prime = query.epsilon / 6.0;
  const std::size_t q = candidate.period;
  const Text reversed_pattern = reverse(query.pattern);

  const auto family = periodic_cover(n, m);
  const auto windows = family.windows.size();
  auto children = fork_windows(noise, windows);
  std::vector<std::vector<std::size_t>> found(windows);
  std::vector<std::vector<Charge>> charges(windows);

  const bool parallel = options.execution == Execution::kParallel;
  const auto count = static_cast<std::int64_t>(windows);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::int64_t w = 0; w < count; ++w) {
    const auto idx = static_cast<std::size_t>(w);
    const Interval span = family.windows[idx];
    const SymbolView window = text.subspan(span.first, span.length());
    const Text reversed_window = reverse(window);
    NoiseSource& src = children[idx];

    charges[idx].push_back({span, share});
    const auto first =
        first_below(window, query.pattern, threshold, eps_prime, src);
    charges[idx].push_back({span, share});
    const auto last_rev = first_below(reversed_window, reversed_pattern,
                                      threshold, eps_prime, src);
    if (!first || !last_rev) continue;

    const std::size_t i = *first;
    // Start in T of the window whose reverse starts at last_rev.
    const auto j = static_cast<std::int64_t>(window.size() - 1) -
                   static_cast<std::int64_t>(*last_rev) -
                   static_cast<std::int64_t>(m - 1);
    if (j < static_cast<std::int64_t>(i)) continue;
    const auto steps = static_cast<std::size_t>(j - static_cast<std::int64_t>(i)) / q;
    for (std::size_t l = 0; l <= steps; ++l) {
      found[idx].push_back(span.first + i + l * q);
    }
  }
  absorb_windows(noise, children);
  apply_charges(ledger, charges);

  ReportOutcome outcome;
  for (const auto& f : found) {
    outcome.positions.insert(outcome.positions.end(), f.begin(), f.end());
  }
  std::sort(outcome.positions.begin(), outcome.positions.end());
  outcome.positions.erase(
      std::unique(outcome.positions.begin(), outcome.positions.end()),
      outcome.positions.end());
  return outcome;
}

CountOutcome count_nonperiodic(SymbolView text, const MatchQuery& query,
                               NoiseSource& noise, BudgetLedger& ledger,
                               const MatcherOptions& options) {
  query.validate(text.size());
  check_ledger(ledger, text.size(), query.epsilon);
  return count_with_scale(text, query, query.k, noise, ledger, options);
}

CountOutcome count_smallk(SymbolView text, const MatchQuery& query,
                          std::size_t big_k, NoiseSource& noise,
                          BudgetLedger& ledger, const MatcherOptions& options) {
  query.validate(text.size());
  check_ledger(ledger, text.size(), query.epsilon);
  if (!(query.k < big_k)) {
    throw std::invalid_argument("count_smallk: requires k < K");
  }
  return count_with_scale(text, query, big_k, noise, ledger, options);
}

ReportOutcome trivial_all(SymbolView text, const MatchQuery& query) {
  query.validate(text.size());
  ReportOutcome outcome;
  outcome.positions.resize(text.size() - query.pattern.size() + 1);
  for (std::size_t i = 0; i < outcome.positions.size(); ++i) {
    outcome.positions[i] = i;
  }
  return outcome;
}

std::string_view variant_name(MatchVariant variant) {
  switch (variant) {
    case MatchVariant::kExistence:
      return "existence";
    case MatchVariant::kCount:
      return "count";
    case MatchVariant::kReport:
      return "report";
    case MatchVariant::kAuto:
      return "auto";
  }
  return "unknown";
}

std::optional<MatchVariant> parse_variant(std::string_view name) {
  for (auto v : {MatchVariant::kExistence, MatchVariant::kCount,
                 MatchVariant::kReport, MatchVariant::kAuto}) {
    if (variant_name(v) == name) return v;
  }
  return std::nullopt;
}

std::string_view MatchResult::regime_label() const {
  return decision ? regime_name(decision->regime) : "Existence";
}

MatchResult match_auto(SymbolView text, const MatchQuery& query,
                       NoiseSource& noise, Execution execution) {
  const std::size_t n = text.size();
  query.validate(n);
  auto decision =
      dispatch(query.pattern, query.k, n, query.epsilon, query.beta);
  BudgetLedger ledger(n, query.epsilon);
  MatcherOptions options;
  options.execution = execution;

  Outcome outcome;
  switch (decision.regime) {
    case Regime::kPeriodicReporting:
      outcome = report_periodic(text, query, *decision.candidate, noise,
                                ledger, options);
      break;
    case Regime::kNonPeriodicCounting:
      outcome = count_nonperiodic(text, query, noise, ledger, options);
      break;
    case Regime::kSmallKCounting:
      outcome = count_smallk(text, query, decision.small_k, noise, ledger,
                             options);
      break;
    case Regime::kTrivialFallback:
      outcome = trivial_all(text, query);
      break;
  }
  return MatchResult{std::move(decision), std::move(outcome),
                     std::move(ledger)};
}

MatchResult run_match(SymbolView text, const MatchQuery& query,
                      MatchVariant variant, NoiseSource& noise,
                      Execution execution) {
  if (variant == MatchVariant::kExistence) {
    query.validate(text.size());
    BudgetLedger ledger(text.size(), query.epsilon);
    auto outcome = existence(text, query, noise, ledger);
    return MatchResult{std::nullopt, outcome, std::move(ledger)};
  }
  auto result = match_auto(text, query, noise, execution);
  if (variant == MatchVariant::kCount) {
    if (const auto* report = std::get_if<ReportOutcome>(&result.outcome)) {
      CountOutcome count;
      count.count = count.raw_count = report->positions.size();
      if (!report->positions.empty()) count.witness = report->positions.front();
      result.outcome = count;
    }
  } else if (variant == MatchVariant::kReport &&
             !std::holds_alternative<ReportOutcome>(result.outcome)) {
    throw std::invalid_argument(
        std::string("reporting is unavailable in regime ") +
        std::string(result.regime_label()) + "; use --variant count or auto");
  }
  return result;
}

}  // namespace dppm
