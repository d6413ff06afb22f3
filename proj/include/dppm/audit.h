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

// Empirical verification rig: utility experiments against the exact oracles
// and frequency-ratio audits of the privacy guarantee on neighbouring texts.
//
// An audit can refute differential privacy but never prove it; a passing
// report reads "not refuted".

#ifndef DPPM_AUDIT_H_
#define DPPM_AUDIT_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dppm/matchers.h"
#include "dppm/noise.h"
#include "dppm/parallel.h"
#include "dppm/stats.h"
#include "dppm/text.h"

namespace dppm {

enum class GeneratorKind {
  kUniform,   // uniform text and pattern over the alphabet
  kPlanted,   // uniform text with P planted once with exactly k corruptions
  kPeriodic,  // Q^inf text with `corruptions` changes, P = Q^inf[0, m-1]
  kDisjoint,  // text over symbols P never uses
};

std::string_view generator_name(GeneratorKind kind);
std::optional<GeneratorKind> parse_generator(std::string_view name);

struct TrialConfig {
  std::size_t n = 1000;
  std::size_t m = 16;
  std::size_t k = 1;
  double epsilon = 1.0;
  double beta = 0.1;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  GeneratorKind generator = GeneratorKind::kUniform;

  std::size_t alphabet = 4;  // symbols 'a', 'b', ...
  std::size_t period = 2;    // |Q| for the periodic generator
  // Corruptions for the periodic generator; defaults to k.
  std::optional<std::size_t> corruptions;
  bool zero_noise = false;
  // When false the periodic reporting matcher runs on any pattern within 2k
  // of a short primitive Q, even if |Q| > m / (32 C).
  bool check_hypothesis = true;
  // Allowed failure probability; defaults to beta.
  std::optional<double> failure_target;

  // Throws std::invalid_argument on out-of-domain parameters.
  void validate() const;
};

struct Instance {
  Text text;
  Pattern pattern;
  std::optional<std::size_t> planted;
};

Instance generate_instance(const TrialConfig& config, std::uint64_t seed);

struct TrialRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::string regime;
  std::string error;  // non-empty when the trial could not run

  bool answer = false;
  std::optional<std::size_t> witness;
  std::optional<std::size_t> witness_distance;
  std::size_t count = 0;          // count, |reported| or 0/1 for existence
  std::size_t true_count_k = 0;   // c_k(S)
  std::size_t true_count_bound = 0;  // c_bound(S)
  std::size_t missed = 0;         // k-mismatch positions not accounted for
  std::size_t max_distance = 0;   // largest distance among returned positions
  double bound = 0.0;             // distance bound the variant guarantees
  bool violated = false;
  double micros = 0.0;
};

struct UtilityReport {
  TrialConfig config;
  MatchVariant variant = MatchVariant::kExistence;
  std::vector<TrialRecord> records;
  std::size_t violations = 0;
  std::size_t errors = 0;
  double violation_rate = 0.0;
  // Largest (distance - k) over every returned position.
  double max_additive_error = 0.0;
  double allowed_violations = 0.0;  // failure_target * trials + 3 sigma
  bool within_slack = true;
  double mean_micros = 0.0;
  double max_micros = 0.0;
};

// Runs cfg.trials independent trials (derived per-trial seeds; parallel over
// trials when requested) and checks each outcome against the exact oracles
// and the guarantee of the matcher that served it.
UtilityReport run_utility_experiment(const TrialConfig& config,
                                     MatchVariant variant,
                                     Execution execution = Execution::kParallel);

enum class AuditMatcher {
  kExistence,
  kPeriodic,
  kNonPeriodic,
  kSmallK,
  kTrivial,
  kCanary,  // exact first k-mismatch position, no noise; must be refuted
};

std::string_view audit_matcher_name(AuditMatcher matcher);
std::optional<AuditMatcher> parse_audit_matcher(std::string_view name);

enum class Coarsening {
  kMatcherDefault,
  kExistence,  // NO, or the witness value (capped) as its own bucket
  kCount,      // count value, capped at 15
  kReport,     // FNV-1a hash of the position set, 16 buckets
};

std::string_view coarsening_name(Coarsening coarsening);
std::optional<Coarsening> parse_coarsening(std::string_view name);

inline constexpr std::size_t kAuditCategories = 16;

struct DpAuditOptions {
  std::size_t trials = 100000;
  std::uint64_t seed = 0;
  // Accept texts at Hamming distance d > 1 and test against e^(d eps).
  bool group = false;
  double confidence = 0.999;
  Coarsening coarsening = Coarsening::kMatcherDefault;
  Execution execution = Execution::kParallel;
};

struct CategoryStats {
  std::string label;
  std::size_t count_first = 0;
  std::size_t count_second = 0;
  stats::ConfidenceInterval ci_first;
  stats::ConfidenceInterval ci_second;
  // Lower confidence bound on max(p/p', p'/p) from the two intervals.
  double certified_ratio = 1.0;
  bool refuted = false;
};

struct DpAuditReport {
  AuditMatcher matcher = AuditMatcher::kExistence;
  std::size_t distance = 1;
  double epsilon = 0.0;
  double ratio_bound = 1.0;  // e^(d eps)
  std::size_t trials = 0;
  double confidence = 0.999;
  std::vector<CategoryStats> categories;  // only categories that occurred
  bool refuted = false;

  std::string_view verdict() const {
    return refuted ? "refuted" : "not refuted";
  }
};

// Runs the matcher `trials` times on each text with independent seeds,
// coarsens outcomes into at most 16 categories and refutes privacy when some
// category's Clopper-Pearson intervals certify a probability ratio above
// e^(d eps). Throws std::invalid_argument for texts of different length, for
// d > 1 without options.group, and for matchers whose precondition the
// pattern fails.
DpAuditReport dp_audit(AuditMatcher matcher, SymbolView first,
                       SymbolView second, const MatchQuery& query,
                       const DpAuditOptions& options);

}  // namespace dppm

#endif  // DPPM_AUDIT_H_
