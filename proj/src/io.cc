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

#include "dppm/io.h"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

namespace dppm {

using nlohmann::ordered_json;

Text read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<Symbol> bytes((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("cannot read " + path.string());
  return Text(std::move(bytes));
}

std::optional<OutputFormat> parse_output_format(std::string_view name) {
  if (name == "json-lines" || name == "jsonl") return OutputFormat::kJsonLines;
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "human") return OutputFormat::kHuman;
  return std::nullopt;
}

std::string to_hex(SymbolView bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * bytes.size());
  for (Symbol b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

namespace {

ordered_json optional_json(const std::optional<std::size_t>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::string scalar_text(const ordered_json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string joined;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i > 0) joined += ';';
      joined += scalar_text(v[i]);
    }
    return joined;
  }
  if (v.is_object()) return v.dump();
  return v.dump();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::string fixed(double v, int digits = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

}  // namespace

ordered_json match_record(const MatchResult& result, const MatchQuery& query,
                          std::uint64_t seed) {
  ordered_json rec;
  rec["regime"] = std::string(result.regime_label());
  rec["answer"] = nullptr;
  rec["count"] = nullptr;
  rec["positions"] = nullptr;
  rec["witness"] = nullptr;
  std::visit(
      [&rec](const auto& out) {
        using T = std::decay_t<decltype(out)>;
        if constexpr (std::is_same_v<T, ExistenceOutcome>) {
          rec["answer"] = out.answer ? "YES" : "NO";
          rec["witness"] = optional_json(out.witness);
        } else if constexpr (std::is_same_v<T, CountOutcome>) {
          rec["count"] = out.count;
          rec["witness"] = optional_json(out.witness);
        } else {
          rec["positions"] = out.positions;
          rec["witness"] = out.positions.empty()
                               ? ordered_json(nullptr)
                               : ordered_json(out.positions.front());
        }
      },
      result.outcome);
  rec["epsilon"] = query.epsilon;
  rec["beta"] = query.beta;
  rec["k"] = query.k;
  rec["seed"] = seed;
  rec["budget_max"] = result.ledger.max_epsilon();
  return rec;
}

ordered_json dispatch_record(const DispatchDecision& decision,
                             const MatchQuery& query, std::size_t n) {
  ordered_json rec;
  rec["regime"] = std::string(regime_name(decision.regime));
  rec["m"] = query.pattern.size();
  rec["n"] = n;
  rec["k"] = query.k;
  rec["effective_k"] = decision.effective_k;
  rec["epsilon"] = query.epsilon;
  rec["beta"] = query.beta;
  rec["C"] = decision.period_scale;
  rec["K"] = decision.small_k;
  rec["K_real"] = decision.small_k_scale;
  rec["period_bound"] = static_cast<std::size_t>(
      static_cast<double>(query.pattern.size()) / (32.0 * decision.period_scale));
  // The shortest close period at the widest bound block voting supports, so
  // the record shows the pattern's structure even when no periodic route is
  // taken. Minimal q with a fixed tie-break, so it equals the dispatcher's
  // candidate whenever that exists.
  std::optional<PeriodicCandidate> cand = decision.candidate;
  if (!cand) {
    cand = shortest_close_period(query.pattern, query.k,
                                 query.pattern.size() / (4 * query.k + 1));
  }
  if (cand) {
    rec["q"] = cand->period;
    rec["Q_hex"] = to_hex(cand->root);
    rec["dist"] = cand->distance;
  } else {
    rec["q"] = nullptr;
    rec["Q_hex"] = nullptr;
    rec["dist"] = nullptr;
  }
  return rec;
}

void write_record(std::ostream& out, const ordered_json& record,
                  OutputFormat format) {
  switch (format) {
    case OutputFormat::kJsonLines:
      out << record.dump() << '\n';
      break;
    case OutputFormat::kCsv: {
      std::string header;
      std::string row;
      bool first = true;
      for (const auto& [key, value] : record.items()) {
        if (!first) {
          header += ',';
          row += ',';
        }
        first = false;
        header += csv_field(key);
        row += csv_field(scalar_text(value));
      }
      out << header << '\n' << row << '\n';
      break;
    }
    case OutputFormat::kHuman:
      for (const auto& [key, value] : record.items()) {
        out << std::left << std::setw(12) << key << ' '
            << (value.is_null() ? std::string("-") : scalar_text(value))
            << '\n';
      }
      break;
  }
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument("config: bad value for " + key + ": " + value);
  }
  return out;
}

double parse_real(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || value.empty()) {
    throw std::invalid_argument("config: bad value for " + key + ": " + value);
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw std::invalid_argument("config: bad value for " + key + ": " + value);
}

}  // namespace

TrialConfig parse_trial_config(std::istream& in) {
  TrialConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key == "n") {
      cfg.n = parse_number<std::size_t>(key, value);
    } else if (key == "m") {
      cfg.m = parse_number<std::size_t>(key, value);
    } else if (key == "k") {
      cfg.k = parse_number<std::size_t>(key, value);
    } else if (key == "epsilon") {
      cfg.epsilon = parse_real(key, value);
    } else if (key == "beta") {
      cfg.beta = parse_real(key, value);
    } else if (key == "trials") {
      cfg.trials = parse_number<std::size_t>(key, value);
    } else if (key == "seed") {
      cfg.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "generator") {
      auto g = parse_generator(value);
      if (!g) throw std::invalid_argument("config: unknown generator " + value);
      cfg.generator = *g;
    } else if (key == "alphabet") {
      cfg.alphabet = parse_number<std::size_t>(key, value);
    } else if (key == "period") {
      cfg.period = parse_number<std::size_t>(key, value);
    } else if (key == "corruptions") {
      cfg.corruptions = parse_number<std::size_t>(key, value);
    } else if (key == "zero_noise") {
      cfg.zero_noise = parse_bool(key, value);
    } else if (key == "check_hypothesis") {
      cfg.check_hypothesis = parse_bool(key, value);
    } else if (key == "failure_target") {
      cfg.failure_target = parse_real(key, value);
    } else {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": unknown key " + key);
    }
  }
  cfg.validate();
  return cfg;
}

namespace {

std::string opt_text(const std::optional<std::size_t>& v) {
  return v ? std::to_string(*v) : std::string();
}

}  // namespace

void write_utility_csv(std::ostream& out, const UtilityReport& report,
                       bool timing) {
  out << "trial,seed,regime,answer,count,witness,witness_distance,"
         "true_count_k,true_count_bound,missed,max_distance,bound,violated,"
         "error";
  if (timing) out << ",micros";
  out << '\n';
  for (const auto& r : report.records) {
    out << r.trial << ',' << r.seed << ',' << csv_field(r.regime) << ','
        << (r.answer ? 1 : 0) << ',' << r.count << ',' << opt_text(r.witness)
        << ',' << opt_text(r.witness_distance) << ',' << r.true_count_k << ','
        << r.true_count_bound << ',' << r.missed << ',' << r.max_distance
        << ',' << fixed(r.bound) << ',' << (r.violated ? 1 : 0) << ','
        << csv_field(r.error);
    if (timing) out << ',' << fixed(r.micros, 1);
    out << '\n';
  }
  // Summary: violations in `count`, violation rate in `bound`, allowed
  // violations in `true_count_bound`, error count in `error`.
  out << "summary," << report.config.seed << ','
      << variant_name(report.variant) << ',' << (report.within_slack ? 1 : 0)
      << ',' << report.violations << ",,," << report.records.size() << ','
      << fixed(report.allowed_violations) << ",,"
      << fixed(report.max_additive_error) << ','
      << fixed(report.violation_rate) << ',' << report.violations << ','
      << report.errors;
  if (timing) out << ',' << fixed(report.mean_micros, 1);
  out << '\n';
}

void write_utility_jsonl(std::ostream& out, const UtilityReport& report,
                         bool timing) {
  for (const auto& r : report.records) {
    ordered_json rec;
    rec["trial"] = r.trial;
    rec["seed"] = r.seed;
    rec["regime"] = r.regime;
    rec["answer"] = r.answer;
    rec["count"] = r.count;
    rec["witness"] = optional_json(r.witness);
    rec["witness_distance"] = optional_json(r.witness_distance);
    rec["true_count_k"] = r.true_count_k;
    rec["true_count_bound"] = r.true_count_bound;
    rec["missed"] = r.missed;
    rec["max_distance"] = r.max_distance;
    rec["bound"] = r.bound;
    rec["violated"] = r.violated;
    rec["error"] = r.error;
    if (timing) rec["micros"] = r.micros;
    out << rec.dump() << '\n';
  }
  ordered_json summary;
  summary["summary"] = true;
  summary["variant"] = std::string(variant_name(report.variant));
  summary["generator"] = std::string(generator_name(report.config.generator));
  summary["n"] = report.config.n;
  summary["m"] = report.config.m;
  summary["k"] = report.config.k;
  summary["epsilon"] = report.config.epsilon;
  summary["beta"] = report.config.beta;
  summary["trials"] = report.config.trials;
  summary["seed"] = report.config.seed;
  summary["violations"] = report.violations;
  summary["errors"] = report.errors;
  summary["violation_rate"] = report.violation_rate;
  summary["allowed_violations"] = report.allowed_violations;
  summary["within_slack"] = report.within_slack;
  summary["max_additive_error"] = report.max_additive_error;
  if (timing) {
    summary["mean_micros"] = report.mean_micros;
    summary["max_micros"] = report.max_micros;
  }
  out << summary.dump() << '\n';
}

ordered_json audit_record(const DpAuditReport& report) {
  ordered_json rec;
  rec["matcher"] = std::string(audit_matcher_name(report.matcher));
  rec["distance"] = report.distance;
  rec["epsilon"] = report.epsilon;
  rec["ratio_bound"] = report.ratio_bound;
  rec["trials"] = report.trials;
  rec["confidence"] = report.confidence;
  rec["verdict"] = std::string(report.verdict());
  ordered_json cats = ordered_json::array();
  for (const auto& c : report.categories) {
    ordered_json cat;
    cat["label"] = c.label;
    cat["count_first"] = c.count_first;
    cat["count_second"] = c.count_second;
    cat["ci_first"] = {c.ci_first.lower, c.ci_first.upper};
    cat["ci_second"] = {c.ci_second.lower, c.ci_second.upper};
    cat["certified_ratio"] = c.certified_ratio;
    cat["refuted"] = c.refuted;
    cats.push_back(std::move(cat));
  }
  rec["categories"] = std::move(cats);
  return rec;
}

void write_audit_csv(std::ostream& out, const DpAuditReport& report) {
  out << "category,count_first,count_second,ci_first_lower,ci_first_upper,"
         "ci_second_lower,ci_second_upper,certified_ratio,ratio_bound,"
         "refuted\n";
  for (const auto& c : report.categories) {
    out << csv_field(c.label) << ',' << c.count_first << ',' << c.count_second
        << ',' << fixed(c.ci_first.lower, 8) << ','
        << fixed(c.ci_first.upper, 8) << ',' << fixed(c.ci_second.lower, 8)
        << ',' << fixed(c.ci_second.upper, 8) << ','
        << fixed(c.certified_ratio) << ',' << fixed(report.ratio_bound) << ','
        << (c.refuted ? 1 : 0) << '\n';
  }
  out << "verdict," << csv_field(std::string(report.verdict())) << '\n';
}

}  // namespace dppm
