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

#include "dppm/audit.h"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <exception>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

#include "dppm/packing.h"
#include "dppm/pattern_analysis.h"

namespace dppm {

std::string_view generator_name(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::kUniform:
      return "uniform";
    case GeneratorKind::kPlanted:
      return "planted";
    case GeneratorKind::kPeriodic:
      return "periodic";
    case GeneratorKind::kDisjoint:
      return "disjoint";
  }
  return "unknown";
}

std::optional<GeneratorKind> parse_generator(std::string_view name) {
  for (auto g : {GeneratorKind::kUniform, GeneratorKind::kPlanted,
                 GeneratorKind::kPeriodic, GeneratorKind::kDisjoint}) {
    if (generator_name(g) == name) return g;
  }
  return std::nullopt;
}

void TrialConfig::validate() const {
  if (m == 0 || m > n) throw std::invalid_argument("config: need 1 <= m <= n");
  if (k > m) throw std::invalid_argument("config: need k <= m");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("config: epsilon must be positive");
  }
  if (!(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("config: beta must lie in (0, 1)");
  }
  if (trials == 0) throw std::invalid_argument("config: trials >= 1");
  if (alphabet < 2 || alphabet > 26) {
    throw std::invalid_argument("config: alphabet must lie in [2, 26]");
  }
  if (period == 0 || period > m) {
    throw std::invalid_argument("config: period must lie in [1, m]");
  }
  if (corruptions && *corruptions > n) {
    throw std::invalid_argument("config: more corruptions than positions");
  }
  if (failure_target && !(*failure_target >= 0.0 && *failure_target < 1.0)) {
    throw std::invalid_argument("config: failure target must lie in [0, 1)");
  }
}

namespace {

// Unbiased integer in [0, bound) by rejection; std distributions are
// implementation-defined and would break cross-platform reproducibility.
std::size_t uniform_below(std::mt19937_64& rng, std::size_t bound) {
  const std::uint64_t b = bound;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % b;
  while (true) {
    const std::uint64_t x = rng();
    if (x < limit) return static_cast<std::size_t>(x % b);
  }
}

Symbol letter(std::size_t i) { return static_cast<Symbol>('a' + i); }

std::vector<Symbol> random_string(std::mt19937_64& rng, std::size_t length,
                                  std::size_t alphabet) {
  std::vector<Symbol> out(length);
  for (auto& s : out) s = letter(uniform_below(rng, alphabet));
  return out;
}

// Replaces s with a different letter of the alphabet.
Symbol corrupt(std::mt19937_64& rng, Symbol s, std::size_t alphabet) {
  const std::size_t current = static_cast<std::size_t>(s - 'a');
  const std::size_t shift = 1 + uniform_below(rng, alphabet - 1);
  return letter((current + shift) % alphabet);
}

// `count` distinct positions in [first, first + span).
std::vector<std::size_t> distinct_positions(std::mt19937_64& rng,
                                            std::size_t first, std::size_t span,
                                            std::size_t count) {
  std::vector<std::size_t> all(span);
  for (std::size_t i = 0; i < span; ++i) all[i] = first + i;
  for (std::size_t i = 0; i < count; ++i) {
    std::swap(all[i], all[i + uniform_below(rng, span - i)]);
  }
  all.resize(count);
  return all;
}

}  // namespace

Instance generate_instance(const TrialConfig& config, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t n = config.n;
  const std::size_t m = config.m;
  const std::size_t sigma = config.alphabet;

  switch (config.generator) {
    case GeneratorKind::kUniform: {
      auto text = random_string(rng, n, sigma);
      auto pattern = random_string(rng, m, sigma);
      return {Text(std::move(text)), Pattern(Text(std::move(pattern))), {}};
    }
    case GeneratorKind::kPlanted: {
      auto text = random_string(rng, n, sigma);
      auto pattern = random_string(rng, m, sigma);
      const std::size_t at = uniform_below(rng, n - m + 1);
      std::copy(pattern.begin(), pattern.end(), text.begin() + at);
      for (std::size_t p : distinct_positions(rng, at, m, config.k)) {
        text[p] = corrupt(rng, text[p], sigma);
      }
      return {Text(std::move(text)), Pattern(Text(std::move(pattern))), at};
    }
    case GeneratorKind::kPeriodic: {
      std::vector<Symbol> root;
      do {
        root = random_string(rng, config.period, sigma);
      } while (!is_primitive(root));
      std::vector<Symbol> text(n);
      for (std::size_t i = 0; i < n; ++i) text[i] = root[i % root.size()];
      std::vector<Symbol> pattern(text.begin(), text.begin() + m);
      const std::size_t changes = config.corruptions.value_or(config.k);
      for (std::size_t p : distinct_positions(rng, 0, n, changes)) {
        text[p] = corrupt(rng, text[p], sigma);
      }
      return {Text(std::move(text)), Pattern(Text(std::move(pattern))), 0};
    }
    case GeneratorKind::kDisjoint: {
      auto pattern = random_string(rng, m, sigma);
      std::vector<Symbol> text(n);
      for (auto& s : text) s = static_cast<Symbol>('A' + uniform_below(rng, sigma));
      return {Text(std::move(text)), Pattern(Text(std::move(pattern))), {}};
    }
  }
  throw std::invalid_argument("unknown generator");
}

namespace {

std::size_t count_at_most(const std::vector<std::size_t>& d, double bound) {
  return static_cast<std::size_t>(std::count_if(
      d.begin(), d.end(),
      [bound](std::size_t v) { return static_cast<double>(v) <= bound; }));
}

void score_report(const std::vector<std::size_t>& d,
                  const std::vector<std::size_t>& positions, std::size_t k,
                  TrialRecord& rec) {
  rec.count = positions.size();
  std::vector<bool> reported(d.size(), false);
  for (std::size_t p : positions) {
    reported[p] = true;
    rec.max_distance = std::max(rec.max_distance, d[p]);
  }
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] <= k && !reported[i]) ++rec.missed;
  }
  if (!positions.empty()) {
    rec.witness = positions.front();
    rec.witness_distance = d[positions.front()];
  }
  rec.violated = rec.missed > 0 ||
                 (!positions.empty() &&
                  static_cast<double>(rec.max_distance) > rec.bound);
}

void score_count(const std::vector<std::size_t>& d, const CountOutcome& out,
                 TrialRecord& rec) {
  rec.count = out.count;
  rec.true_count_bound = count_at_most(d, rec.bound);
  rec.missed = rec.true_count_k > out.count ? rec.true_count_k - out.count : 0;
  if (out.witness) {
    rec.witness = out.witness;
    rec.witness_distance = d[*out.witness];
    rec.max_distance = d[*out.witness];
  }
  rec.violated = out.count < rec.true_count_k ||
                 out.count > rec.true_count_bound ||
                 (out.count > 0 && !out.witness) ||
                 (out.witness &&
                  static_cast<double>(d[*out.witness]) > rec.bound);
}

TrialRecord run_trial(const TrialConfig& cfg, MatchVariant variant,
                      std::size_t trial) {
  TrialRecord rec;
  rec.trial = trial;
  rec.seed = derive_seed(cfg.seed, trial);
  const auto start = std::chrono::steady_clock::now();
  try {
    const Instance inst = generate_instance(cfg, derive_seed(rec.seed, 0));
    const SymbolView text = inst.text;
    const std::size_t n = text.size();
    const std::size_t m = inst.pattern.size();
    const std::size_t k = cfg.k;
    NoiseSource noise = cfg.zero_noise
                            ? NoiseSource::zero()
                            : NoiseSource::standard(derive_seed(rec.seed, 1));
    const MatchQuery query{inst.pattern, k, cfg.epsilon, cfg.beta};
    const auto d = sliding_distances(text, inst.pattern, Execution::kSerial);
    rec.true_count_k = count_at_most(d, static_cast<double>(k));
    MatcherOptions serial;
    serial.execution = Execution::kSerial;
    BudgetLedger ledger(n, cfg.epsilon);

    if (variant == MatchVariant::kExistence) {
      rec.regime = "Existence";
      rec.bound = static_cast<double>(k) +
                  bounds::existence_error(n, m, cfg.epsilon, cfg.beta);
      const auto out = existence(text, query, noise, ledger, serial);
      rec.answer = out.answer;
      rec.count = out.answer ? 1 : 0;
      if (out.witness) {
        rec.witness = out.witness;
        rec.witness_distance = d[*out.witness];
        rec.max_distance = d[*out.witness];
      }
      rec.missed = (rec.true_count_k > 0 && !out.answer) ? 1 : 0;
      rec.true_count_bound = count_at_most(d, rec.bound);
      rec.violated = rec.missed > 0 ||
                     (out.witness &&
                      static_cast<double>(d[*out.witness]) > rec.bound);
    } else {
      auto decision = dispatch(inst.pattern, k, n, cfg.epsilon, cfg.beta);
      if (variant == MatchVariant::kReport && !cfg.check_hypothesis &&
          decision.regime != Regime::kPeriodicReporting && m >= 2) {
        const std::size_t q_max = m / (4 * k + 1);
        if (auto cand = shortest_close_period(inst.pattern, k, q_max)) {
          decision.regime = Regime::kPeriodicReporting;
          decision.candidate = std::move(cand);
        }
      }
      rec.regime = std::string(regime_name(decision.regime));
      MatcherOptions options = serial;
      options.check_hypothesis = cfg.check_hypothesis;

      switch (decision.regime) {
        case Regime::kPeriodicReporting: {
          rec.bound = bounds::periodic_report_bound(n, k, cfg.epsilon, cfg.beta);
          const auto out = report_periodic(text, query, *decision.candidate,
                                           noise, ledger, options);
          score_report(d, out.positions, k, rec);
          rec.true_count_bound = count_at_most(d, rec.bound);
          break;
        }
        case Regime::kTrivialFallback: {
          rec.bound = static_cast<double>(m);
          const auto out = trivial_all(text, query);
          score_report(d, out.positions, k, rec);
          rec.true_count_bound = count_at_most(d, rec.bound);
          break;
        }
        case Regime::kNonPeriodicCounting:
        case Regime::kSmallKCounting: {
          if (variant == MatchVariant::kReport) {
            throw std::invalid_argument(
                "reporting unavailable in regime " + rec.regime);
          }
          const std::size_t scale = decision.effective_k;
          rec.bound =
              (1.0 + bounds::nonperiodic_gamma(n, m, scale, cfg.epsilon,
                                               cfg.beta)) *
              static_cast<double>(scale);
          const auto out =
              decision.regime == Regime::kNonPeriodicCounting
                  ? count_nonperiodic(text, query, noise, ledger, options)
                  : count_smallk(text, query, scale, noise, ledger, options);
          score_count(d, out, rec);
          break;
        }
      }
    }
  } catch (const std::exception& e) {
    rec.error = e.what();
    rec.violated = false;
  }
  rec.micros = std::chrono::duration<double, std::micro>(
                   std::chrono::steady_clock::now() - start)
                   .count();
  return rec;
}

}  // namespace

UtilityReport run_utility_experiment(const TrialConfig& config,
                                     MatchVariant variant,
                                     Execution execution) {
  config.validate();
  UtilityReport report;
  report.config = config;
  report.variant = variant;
  report.records.resize(config.trials);

  const auto trials = static_cast<std::int64_t>(config.trials);
  const bool parallel = execution == Execution::kParallel;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::int64_t t = 0; t < trials; ++t) {
    report.records[static_cast<std::size_t>(t)] =
        run_trial(config, variant, static_cast<std::size_t>(t));
  }

  double micros = 0.0;
  for (const auto& rec : report.records) {
    micros += rec.micros;
    report.max_micros = std::max(report.max_micros, rec.micros);
    if (!rec.error.empty()) {
      ++report.errors;
      continue;
    }
    if (rec.violated) ++report.violations;
    if (rec.witness_distance || rec.count > 0) {
      report.max_additive_error =
          std::max(report.max_additive_error,
                   static_cast<double>(rec.max_distance) -
                       static_cast<double>(config.k));
    }
  }
  const std::size_t scored = config.trials - report.errors;
  report.violation_rate =
      scored == 0 ? 0.0
                  : static_cast<double>(report.violations) /
                        static_cast<double>(scored);
  report.mean_micros = micros / static_cast<double>(config.trials);
  const double target = config.failure_target.value_or(config.beta);
  report.allowed_violations = stats::binomial_slack(target, config.trials);
  report.within_slack =
      static_cast<double>(report.violations) <= report.allowed_violations;
  return report;
}

std::string_view audit_matcher_name(AuditMatcher matcher) {
  switch (matcher) {
    case AuditMatcher::kExistence:
      return "existence";
    case AuditMatcher::kPeriodic:
      return "periodic";
    case AuditMatcher::kNonPeriodic:
      return "nonperiodic";
    case AuditMatcher::kSmallK:
      return "smallk";
    case AuditMatcher::kTrivial:
      return "trivial";
    case AuditMatcher::kCanary:
      return "canary";
  }
  return "unknown";
}

std::optional<AuditMatcher> parse_audit_matcher(std::string_view name) {
  for (auto m : {AuditMatcher::kExistence, AuditMatcher::kPeriodic,
                 AuditMatcher::kNonPeriodic, AuditMatcher::kSmallK,
                 AuditMatcher::kTrivial, AuditMatcher::kCanary}) {
    if (audit_matcher_name(m) == name) return m;
  }
  return std::nullopt;
}

std::string_view coarsening_name(Coarsening coarsening) {
  switch (coarsening) {
    case Coarsening::kMatcherDefault:
      return "default";
    case Coarsening::kExistence:
      return "existence";
    case Coarsening::kCount:
      return "count";
    case Coarsening::kReport:
      return "report";
  }
  return "unknown";
}

std::optional<Coarsening> parse_coarsening(std::string_view name) {
  for (auto c : {Coarsening::kMatcherDefault, Coarsening::kExistence,
                 Coarsening::kCount, Coarsening::kReport}) {
    if (coarsening_name(c) == name) return c;
  }
  return std::nullopt;
}

namespace {

constexpr std::size_t kLastBucket = kAuditCategories - 1;

std::size_t existence_bucket(const std::optional<std::size_t>& witness) {
  if (!witness) return 0;
  return 1 + std::min(*witness, kLastBucket - 1);
}

std::size_t count_bucket(std::size_t count) {
  return std::min(count, kLastBucket);
}

std::size_t report_bucket(const std::vector<std::size_t>& positions) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (v >> (8 * byte)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  mix(positions.size());
  for (std::size_t p : positions) mix(p);
  return static_cast<std::size_t>(h % kAuditCategories);
}

std::string bucket_label(Coarsening c, std::size_t bucket) {
  switch (c) {
    case Coarsening::kExistence:
      if (bucket == 0) return "NO";
      if (bucket == kLastBucket) {
        return "witness>=" + std::to_string(kLastBucket - 1);
      }
      return "witness=" + std::to_string(bucket - 1);
    case Coarsening::kCount:
      if (bucket == kLastBucket) return "count>=" + std::to_string(kLastBucket);
      return "count=" + std::to_string(bucket);
    default:
      return "set-hash=" + std::to_string(bucket);
  }
}

Coarsening default_coarsening(AuditMatcher matcher) {
  switch (matcher) {
    case AuditMatcher::kExistence:
    case AuditMatcher::kCanary:
      return Coarsening::kExistence;
    case AuditMatcher::kNonPeriodic:
    case AuditMatcher::kSmallK:
      return Coarsening::kCount;
    case AuditMatcher::kPeriodic:
    case AuditMatcher::kTrivial:
      return Coarsening::kReport;
  }
  return Coarsening::kExistence;
}

// Maps any outcome onto the requested coarsening.
std::size_t bucket_of(const Outcome& outcome, Coarsening c) {
  return std::visit(
      [c](const auto& out) -> std::size_t {
        using T = std::decay_t<decltype(out)>;
        if constexpr (std::is_same_v<T, ExistenceOutcome>) {
          if (c == Coarsening::kCount) return count_bucket(out.answer ? 1 : 0);
          if (c == Coarsening::kReport) {
            return report_bucket(out.witness
                                     ? std::vector<std::size_t>{*out.witness}
                                     : std::vector<std::size_t>{});
          }
          return existence_bucket(out.witness);
        } else if constexpr (std::is_same_v<T, CountOutcome>) {
          if (c == Coarsening::kExistence) {
            return existence_bucket(out.count > 0 ? out.witness : std::nullopt);
          }
          if (c == Coarsening::kReport) {
            return report_bucket(out.witness
                                     ? std::vector<std::size_t>{*out.witness}
                                     : std::vector<std::size_t>{});
          }
          return count_bucket(out.count);
        } else {
          if (c == Coarsening::kExistence) {
            return existence_bucket(
                out.positions.empty()
                    ? std::nullopt
                    : std::optional<std::size_t>(out.positions.front()));
          }
          if (c == Coarsening::kCount) {
            return count_bucket(out.positions.size());
          }
          return report_bucket(out.positions);
        }
      },
      outcome);
}

struct AuditPlan {
  AuditMatcher matcher;
  MatchQuery query;
  std::optional<PeriodicCandidate> candidate;
  std::size_t big_k = 0;
};

Outcome run_audit_matcher(const AuditPlan& plan, SymbolView text,
                          std::uint64_t seed) {
  MatcherOptions options;
  options.execution = Execution::kSerial;
  NoiseSource noise = NoiseSource::standard(seed);
  BudgetLedger ledger(text.size(), plan.query.epsilon);
  switch (plan.matcher) {
    case AuditMatcher::kExistence:
      return existence(text, plan.query, noise, ledger, options);
    case AuditMatcher::kPeriodic:
      options.check_hypothesis = false;
      return report_periodic(text, plan.query, *plan.candidate, noise, ledger,
                             options);
    case AuditMatcher::kNonPeriodic:
      return count_nonperiodic(text, plan.query, noise, ledger, options);
    case AuditMatcher::kSmallK:
      return count_smallk(text, plan.query, plan.big_k, noise, ledger,
                          options);
    case AuditMatcher::kTrivial:
      return trivial_all(text, plan.query);
    case AuditMatcher::kCanary: {
      const auto d = sliding_distances(text, plan.query.pattern,
                                       Execution::kSerial);
      for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] <= plan.query.k) return ExistenceOutcome{true, i};
      }
      return ExistenceOutcome{false, std::nullopt};
    }
  }
  throw std::invalid_argument("unknown audit matcher");
}

using Histogram = std::array<std::size_t, kAuditCategories>;

Histogram histogram(const AuditPlan& plan, SymbolView text, Coarsening c,
                    const DpAuditOptions& options, std::uint64_t parity) {
  Histogram total{};
  const auto trials = static_cast<std::int64_t>(options.trials);
  const bool parallel = options.execution == Execution::kParallel;
#pragma omp parallel if (parallel)
  {
    Histogram local{};
#pragma omp for schedule(static)
    for (std::int64_t t = 0; t < trials; ++t) {
      const std::uint64_t seed =
          derive_seed(options.seed, 2 * static_cast<std::uint64_t>(t) + parity);
      ++local[bucket_of(run_audit_matcher(plan, text, seed), c)];
    }
#pragma omp critical
    for (std::size_t b = 0; b < kAuditCategories; ++b) total[b] += local[b];
  }
  return total;
}

}  // namespace

DpAuditReport dp_audit(AuditMatcher matcher, SymbolView first,
                       SymbolView second, const MatchQuery& query,
                       const DpAuditOptions& options) {
  if (first.size() != second.size()) {
    throw std::invalid_argument("dp_audit: texts differ in length");
  }
  query.validate(first.size());
  if (options.trials == 0) throw std::invalid_argument("dp_audit: trials");
  const std::size_t d = hamming_distance(first, second);
  if (d > 1 && !options.group) {
    throw std::invalid_argument(
        "dp_audit: texts are not neighbouring (distance " + std::to_string(d) +
        "); pass group mode to test e^(d eps)");
  }

  AuditPlan plan{matcher, query, std::nullopt, 0};
  const std::size_t m = query.pattern.size();
  if (matcher == AuditMatcher::kPeriodic) {
    if (m < 2) throw std::invalid_argument("dp_audit: periodic needs m >= 2");
    plan.candidate =
        shortest_close_period(query.pattern, query.k, m / (4 * query.k + 1));
    if (!plan.candidate) {
      throw std::invalid_argument(
          "dp_audit: pattern has no close short period");
    }
  } else if (matcher == AuditMatcher::kSmallK) {
    plan.big_k = static_cast<std::size_t>(
        std::ceil(small_k_scale(first.size(), query.epsilon, query.beta)));
  }
  const Coarsening coarsening = options.coarsening == Coarsening::kMatcherDefault
                                    ? default_coarsening(matcher)
                                    : options.coarsening;

  const Histogram h1 = histogram(plan, first, coarsening, options, 0);
  const Histogram h2 = histogram(plan, second, coarsening, options, 1);

  DpAuditReport report;
  report.matcher = matcher;
  report.distance = std::max<std::size_t>(d, 1);
  report.epsilon = query.epsilon;
  report.ratio_bound =
      std::exp(static_cast<double>(report.distance) * query.epsilon);
  report.trials = options.trials;
  report.confidence = options.confidence;
  for (std::size_t b = 0; b < kAuditCategories; ++b) {
    if (h1[b] + h2[b] == 0) continue;
    CategoryStats cat;
    cat.label = bucket_label(coarsening, b);
    cat.count_first = h1[b];
    cat.count_second = h2[b];
    cat.ci_first =
        stats::clopper_pearson(h1[b], options.trials, options.confidence);
    cat.ci_second =
        stats::clopper_pearson(h2[b], options.trials, options.confidence);
    cat.certified_ratio = std::max(cat.ci_first.lower / cat.ci_second.upper,
                                   cat.ci_second.lower / cat.ci_first.upper);
    cat.refuted = cat.certified_ratio > report.ratio_bound;
    report.refuted = report.refuted || cat.refuted;
    report.categories.push_back(std::move(cat));
  }
  return report;
}

}  // namespace dppm
