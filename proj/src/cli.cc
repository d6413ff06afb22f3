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

#include "dppm/cli.h"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dppm/audit.h"
#include "dppm/io.h"
#include "dppm/matchers.h"
#include "dppm/noise.h"
#include "dppm/pattern_analysis.h"

namespace dppm {
namespace {

namespace fs = std::filesystem;

constexpr std::size_t kUnknownLength = std::numeric_limits<std::size_t>::max();

struct QueryArgs {
  std::string pattern;
  std::size_t k = 0;
  double epsilon = 1.0;
  double beta = 0.1;
};

struct OutputArgs {
  std::string format = "json-lines";
  std::string out;
};

void add_query_options(CLI::App* cmd, QueryArgs& q) {
  cmd->add_option("--pattern", q.pattern,
                  "Pattern bytes, verbatim, or @path to read them from a file")
      ->required();
  cmd->add_option("--k", q.k, "Mismatch threshold k")->required();
  cmd->add_option("--epsilon", q.epsilon, "Privacy parameter")
      ->capture_default_str();
  cmd->add_option("--beta", q.beta, "Failure probability in (0, 1)")
      ->capture_default_str();
}

void add_output_options(CLI::App* cmd, OutputArgs& o,
                        const std::string& default_format) {
  o.format = default_format;
  cmd->add_option("--format", o.format, "json-lines, csv or human")
      ->capture_default_str();
  cmd->add_option("--out", o.out, "Write output here instead of stdout");
}

OutputFormat output_format(const std::string& name) {
  auto f = parse_output_format(name);
  if (!f) throw std::invalid_argument("unknown output format: " + name);
  return *f;
}

Pattern load_pattern(const std::string& arg) {
  if (!arg.empty() && arg.front() == '@') {
    Text bytes = read_text_file(arg.substr(1));
    if (bytes.empty()) throw std::invalid_argument("pattern file is empty");
    return Pattern(std::move(bytes));
  }
  if (arg.empty()) throw std::invalid_argument("pattern must not be empty");
  return Pattern(arg);
}

// Checks every parameter that does not depend on the text length.
MatchQuery build_query(const QueryArgs& args) {
  MatchQuery query{load_pattern(args.pattern), args.k, args.epsilon,
                   args.beta};
  query.validate(kUnknownLength);
  return query;
}

void check_output_path(const std::string& out,
                       const std::vector<std::string>& inputs) {
  if (out.empty()) return;
  for (const auto& in : inputs) {
    std::error_code ec;
    if (!in.empty() && fs::exists(out, ec) && fs::equivalent(out, in, ec)) {
      throw std::invalid_argument("--out must not name an input file: " + out);
    }
  }
}

void emit(const std::string& payload, const std::string& out_path,
          std::ostream& out) {
  if (out_path.empty()) {
    out << payload;
    out.flush();
    return;
  }
  std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + out_path + " for writing");
  file << payload;
  file.flush();
  if (!file) throw IoError("cannot write " + out_path);
}

int cmd_match(const QueryArgs& qa, const OutputArgs& oa,
              const std::string& variant_arg, std::uint64_t seed,
              bool zero_noise, const std::string& text_path,
              std::ostream& out) {
  auto variant = parse_variant(variant_arg);
  if (!variant) throw std::invalid_argument("unknown variant: " + variant_arg);
  const OutputFormat format = output_format(oa.format);
  MatchQuery query = build_query(qa);
  check_output_path(oa.out, {text_path});

  const Text text = read_text_file(text_path);
  query.validate(text.size());
  NoiseSource noise = zero_noise ? NoiseSource::zero()
                                 : NoiseSource::standard(derive_seed(seed, 0));
  const MatchResult result = run_match(text, query, *variant, noise);

  std::ostringstream buf;
  write_record(buf, match_record(result, query, seed), format);
  emit(buf.str(), oa.out, out);
  return kExitOk;
}

int cmd_inspect(const QueryArgs& qa, const OutputArgs& oa,
                std::optional<std::size_t> n_arg, const std::string& text_path,
                std::ostream& out) {
  const OutputFormat format = output_format(oa.format);
  MatchQuery query = build_query(qa);
  std::size_t n = query.pattern.size();
  if (n_arg) {
    n = *n_arg;
  } else if (!text_path.empty()) {
    // Only the length of the text is public input to the dispatcher.
    std::error_code ec;
    const auto size = fs::file_size(text_path, ec);
    if (ec) throw IoError("cannot stat " + text_path + ": " + ec.message());
    n = static_cast<std::size_t>(size);
  }
  check_output_path(oa.out, {text_path});
  query.validate(n);
  const DispatchDecision decision =
      dispatch(query.pattern, query.k, n, query.epsilon, query.beta);

  std::ostringstream buf;
  write_record(buf, dispatch_record(decision, query, n), format);
  emit(buf.str(), oa.out, out);
  return kExitOk;
}

int cmd_bench(const std::string& config_path, const std::string& variant_arg,
              const OutputArgs& oa, bool timing, bool serial,
              std::ostream& out) {
  auto variant = parse_variant(variant_arg);
  if (!variant || *variant == MatchVariant::kAuto) {
    throw std::invalid_argument("bench variant must be existence, count or "
                                "report: " + variant_arg);
  }
  const OutputFormat format = output_format(oa.format);
  check_output_path(oa.out, {config_path});

  std::ifstream in(config_path);
  if (!in) throw IoError("cannot open " + config_path);
  const TrialConfig config = parse_trial_config(in);

  const UtilityReport report = run_utility_experiment(
      config, *variant, serial ? Execution::kSerial : Execution::kParallel);
  std::ostringstream buf;
  if (format == OutputFormat::kJsonLines) {
    write_utility_jsonl(buf, report, timing);
  } else {
    write_utility_csv(buf, report, timing);
  }
  emit(buf.str(), oa.out, out);
  return kExitOk;
}

struct AuditArgs {
  std::string text;
  std::string neighbour;
  std::string matcher = "existence";
  std::string coarsening = "default";
  std::size_t trials = 100000;
  bool group = false;
  double confidence = 0.999;
};

int cmd_dp_audit(const QueryArgs& qa, const OutputArgs& oa,
                 const AuditArgs& aa, std::uint64_t seed, std::ostream& out) {
  auto matcher = parse_audit_matcher(aa.matcher);
  if (!matcher) throw std::invalid_argument("unknown matcher: " + aa.matcher);
  auto coarsening = parse_coarsening(aa.coarsening);
  if (!coarsening) {
    throw std::invalid_argument("unknown coarsening: " + aa.coarsening);
  }
  if (aa.trials == 0) throw std::invalid_argument("--trials must be >= 1");
  if (!(aa.confidence > 0.0 && aa.confidence < 1.0)) {
    throw std::invalid_argument("--confidence must lie in (0, 1)");
  }
  const OutputFormat format = output_format(oa.format);
  MatchQuery query = build_query(qa);
  check_output_path(oa.out, {aa.text, aa.neighbour});

  const Text first = read_text_file(aa.text);
  const Text second = read_text_file(aa.neighbour);
  query.validate(first.size());

  DpAuditOptions options;
  options.trials = aa.trials;
  options.seed = seed;
  options.group = aa.group;
  options.confidence = aa.confidence;
  options.coarsening = *coarsening;
  const DpAuditReport report = dp_audit(*matcher, first, second, query, options);

  std::ostringstream buf;
  switch (format) {
    case OutputFormat::kJsonLines:
      buf << audit_record(report).dump() << '\n';
      break;
    case OutputFormat::kCsv:
      write_audit_csv(buf, report);
      break;
    case OutputFormat::kHuman: {
      nlohmann::ordered_json summary = audit_record(report);
      summary.erase("categories");
      write_record(buf, summary, OutputFormat::kHuman);
      break;
    }
  }
  emit(buf.str(), oa.out, out);
  return report.refuted ? kExitRefuted : kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Differentially private k-mismatch pattern matching"};
  app.name("dppm");
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  auto add_seed = [&seed](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "Root seed for all noise")
        ->envname("DPPM_SEED")
        ->capture_default_str();
  };

  // match
  QueryArgs match_q;
  OutputArgs match_o;
  std::string match_variant = "auto";
  std::string match_text;
  bool zero_noise = false;
  CLI::App* match = app.add_subcommand("match", "Run a private query");
  add_query_options(match, match_q);
  add_output_options(match, match_o, "json-lines");
  add_seed(match);
  match->add_option("--variant", match_variant,
                    "existence, count, report or auto")
      ->capture_default_str();
  match->add_flag("--zero-noise", zero_noise,
                  "Disable noise (testing only; not private)");
  match->add_option("text", match_text, "Text file (raw bytes)")->required();

  // inspect-pattern
  QueryArgs inspect_q;
  OutputArgs inspect_o;
  std::optional<std::size_t> inspect_n;
  std::string inspect_text;
  CLI::App* inspect = app.add_subcommand(
      "inspect-pattern", "Show the dispatch decision for a pattern");
  add_query_options(inspect, inspect_q);
  add_output_options(inspect, inspect_o, "json-lines");
  inspect->add_option("--n", inspect_n, "Text length (defaults to m)");
  inspect->add_option("text", inspect_text,
                      "Text file; only its length is used");

  // bench
  OutputArgs bench_o;
  std::string bench_config;
  std::string bench_variant = "existence";
  bool bench_timing = false;
  bool bench_serial = false;
  CLI::App* bench =
      app.add_subcommand("bench", "Run a seeded utility experiment");
  bench->add_option("config", bench_config, "key = value trial config file")
      ->required();
  bench->add_option("--variant", bench_variant, "existence, count or report")
      ->capture_default_str();
  add_output_options(bench, bench_o, "csv");
  bench->add_flag("--timing", bench_timing,
                  "Add per-trial wall-clock columns (not reproducible)");
  bench->add_flag("--serial", bench_serial, "Run trials on one thread");

  // dp-audit
  QueryArgs audit_q;
  OutputArgs audit_o;
  AuditArgs audit_a;
  CLI::App* audit =
      app.add_subcommand("dp-audit", "Frequency-ratio audit on two texts");
  add_query_options(audit, audit_q);
  add_output_options(audit, audit_o, "json-lines");
  add_seed(audit);
  audit->add_option("text", audit_a.text, "First text file")->required();
  audit->add_option("--neighbour", audit_a.neighbour, "Second text file")
      ->required();
  audit->add_option("--matcher", audit_a.matcher,
                    "existence, periodic, nonperiodic, smallk, trivial or "
                    "canary")
      ->capture_default_str();
  audit->add_option("--coarsening", audit_a.coarsening,
                    "default, existence, count or report")
      ->capture_default_str();
  audit->add_option("--trials", audit_a.trials, "Runs per text")
      ->capture_default_str();
  audit->add_option("--confidence", audit_a.confidence,
                    "Clopper-Pearson confidence level")
      ->capture_default_str();
  audit->add_flag("--group", audit_a.group,
                  "Allow texts at distance d > 1 and test against e^(d eps)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (match->parsed()) {
      return cmd_match(match_q, match_o, match_variant, seed, zero_noise,
                       match_text, out);
    }
    if (inspect->parsed()) {
      return cmd_inspect(inspect_q, inspect_o, inspect_n, inspect_text, out);
    }
    if (bench->parsed()) {
      return cmd_bench(bench_config, bench_variant, bench_o, bench_timing,
                       bench_serial, out);
    }
    return cmd_dp_audit(audit_q, audit_o, audit_a, seed, out);
  } catch (const IoError& e) {
    err << "dppm: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "dppm: invalid argument: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "dppm: internal error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace dppm
