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

// File loading and structured records (JSON lines, CSV, human-readable).

#ifndef DPPM_IO_H_
#define DPPM_IO_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "dppm/audit.h"
#include "dppm/matchers.h"
#include "dppm/pattern_analysis.h"
#include "dppm/text.h"

namespace dppm {

// Raised for unreadable inputs and unwritable outputs.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reads the file verbatim as bytes.
Text read_text_file(const std::filesystem::path& path);

enum class OutputFormat { kJsonLines, kCsv, kHuman };

std::optional<OutputFormat> parse_output_format(std::string_view name);

// {regime, answer, count, positions, witness, epsilon, beta, k, seed,
//  budget_max}; fields that the outcome type lacks are null.
nlohmann::ordered_json match_record(const MatchResult& result,
                                    const MatchQuery& query,
                                    std::uint64_t seed);

// Includes the shortest close period (q, Q as hex, dist) searched up to
// floor(m / (4k + 1)), whether or not the chosen regime uses it.
nlohmann::ordered_json dispatch_record(const DispatchDecision& decision,
                                       const MatchQuery& query,
                                       std::size_t n);

// Writes a flat record in the requested format. CSV emits a header line and
// one row; arrays are joined with ';'.
void write_record(std::ostream& out, const nlohmann::ordered_json& record,
                  OutputFormat format);

// Flat key = value lines; '#' starts a comment. Keys mirror TrialConfig
// fields: n, m, k, epsilon, beta, trials, seed, generator, alphabet, period,
// corruptions, zero_noise, check_hypothesis, failure_target. Throws
// std::invalid_argument on unknown keys or malformed values.
TrialConfig parse_trial_config(std::istream& in);

// One row per trial plus a final summary row. Timing columns are only
// written on request so that repeated runs are byte-identical.
void write_utility_csv(std::ostream& out, const UtilityReport& report,
                       bool timing = false);
void write_utility_jsonl(std::ostream& out, const UtilityReport& report,
                         bool timing = false);

nlohmann::ordered_json audit_record(const DpAuditReport& report);
void write_audit_csv(std::ostream& out, const DpAuditReport& report);

std::string to_hex(SymbolView bytes);

}  // namespace dppm

#endif  // DPPM_IO_H_
