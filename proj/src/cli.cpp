#include "collatz/cli.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "collatz/experiment.hpp"
#include "collatz/report.hpp"
#include "collatz/selfcheck.hpp"
#include "collatz/sieve.hpp"
#include "collatz/trajectory.hpp"

namespace collatz::cli {

namespace {

struct Options {
  std::vector<std::size_t> digits;
  std::size_t count = 1;
  std::uint64_t seed = 0;
  unsigned k_max = 0;
  unsigned cache_depth = kDefaultCacheDepth;
  double budget_mult = kDefaultBudgetMultiplier;
  std::string format = "json";
  std::string out_path;
  std::optional<unsigned> threads;
  std::string emit_classes;
  std::string value;
  std::string value_file;
  std::size_t max_states = SieveLimits{}.max_states;
  bool progress = false;
};

// Writes to --out when given, else to the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot open output file: " + path);
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::string fmt_optional(const std::optional<double>& v, int precision) {
  if (!v) return "undefined";
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << *v;
  return s.str();
}

void add_format(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("--out", o.out_path, "Write output to PATH instead of stdout");
}

void add_experiment_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--count", o.count, "Number of random start values")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "Run seed");
  cmd->add_option("--threads", o.threads, "Worker threads (default: COLLATZ_THREADS or 1)")
      ->check(CLI::PositiveNumber);
}

void add_verify_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--cache-depth", o.cache_depth, "Base table depth")
      ->check(CLI::Range(1u, kMaxCacheDepth));
  cmd->add_option("--budget-mult", o.budget_mult,
                  "Budget as a multiple of the expected stopping time")
      ->check(CLI::PositiveNumber);
}

ExperimentConfig experiment_config(const Options& o, std::size_t digits) {
  ExperimentConfig c;
  c.digits = digits;
  c.count = o.count;
  c.seed = o.seed;
  c.budget_multiplier = o.budget_mult;
  c.threads = resolve_threads(o.threads);
  return c;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const BaseTable table(o.cache_depth);
  const auto report = run_experiment(experiment_config(o, o.digits.front()), table);
  Sink sink(o.out_path, out);
  auto& os = sink.get();
  if (o.format == "json") {
    auto j = experiment_json(report);
    j["command"] = "verify";
    os << j.dump(2) << '\n';
  } else if (o.format == "csv") {
    write_samples_csv(os, report);
  } else {
    os << "index  seed                  steps       hypersteps  seconds\n";
    for (const auto& s : report.samples) {
      os << std::setw(5) << s.index << "  " << std::setw(20) << s.seed << "  ";
      if (s.record) {
        os << std::setw(10) << s.record->condensed_steps << "  " << std::setw(10)
           << s.record->hypersteps << "  " << s.record->elapsed_seconds << '\n';
      } else {
        os << "FAILED: " << s.error << '\n';
      }
    }
    if (report.summary) {
      const auto& m = *report.summary;
      os << "mean " << std::fixed << std::setprecision(1) << m.mean << "  std " << m.std
         << "  model " << m.model_mean << "  ratio " << std::setprecision(5)
         << m.mean_over_model << '\n';
    }
  }
  return report.failures() == 0 ? kOk : kVerificationAnomaly;
}

int cmd_stats(const Options& o, std::ostream& out) {
  const BaseTable table(o.cache_depth);
  std::vector<ExperimentReport> reports;
  for (const auto d : o.digits) reports.push_back(run_experiment(experiment_config(o, d), table));

  Sink sink(o.out_path, out);
  auto& os = sink.get();
  if (o.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : reports) {
      auto j = experiment_json(r, false);
      j["median_elapsed_seconds"] = r.median_elapsed_seconds();
      rows.push_back(std::move(j));
    }
    os << nlohmann::json{{"command", "stats"}, {"experiments", rows}}.dump(2) << '\n';
  } else if (o.format == "csv") {
    os << "digits,n,mean,std,skewness,kurtosis,ks_statistic,ks_p_approx,model_mean,"
          "mean_over_model,failures,median_elapsed_seconds\n";
    for (const auto& r : reports) {
      os << r.config.digits << ',';
      if (r.summary) {
        const auto& m = *r.summary;
        auto opt = [](const std::optional<double>& v) {
          return v ? std::to_string(*v) : std::string();
        };
        os << m.n << ',' << m.mean << ',' << m.std << ',' << opt(m.skewness) << ','
           << opt(m.kurtosis) << ',' << opt(m.ks_statistic) << ',' << opt(m.ks_p_approx)
           << ',' << m.model_mean << ',' << m.mean_over_model;
      } else {
        os << r.sample_set.counts.size() << ",,,,,,,,";
      }
      os << ',' << r.failures() << ',' << r.median_elapsed_seconds() << '\n';
    }
  } else {
    os << "digits      n      mean            std        skew     kurt    KS p     "
          "mean/model  median s\n";
    for (const auto& r : reports) {
      os << std::setw(8) << r.config.digits << "  ";
      if (!r.summary) {
        os << "(fewer than two successful samples)\n";
        continue;
      }
      const auto& m = *r.summary;
      os << std::setw(5) << m.n << "  " << std::fixed << std::setprecision(1)
         << std::setw(14) << m.mean << "  " << std::setw(9) << m.std << "  "
         << std::setw(7) << fmt_optional(m.skewness, 3) << "  " << std::setw(6)
         << fmt_optional(m.kurtosis, 3) << "  " << std::setw(6)
         << fmt_optional(m.ks_p_approx, 3) << "  " << std::setprecision(5)
         << std::setw(9) << m.mean_over_model << "  " << std::setprecision(4)
         << r.median_elapsed_seconds() << '\n';
    }
  }
  const bool ok = std::all_of(reports.begin(), reports.end(),
                              [](const ExperimentReport& r) { return r.failures() == 0; });
  return ok ? kOk : kVerificationAnomaly;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read value file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int cmd_verify_number(const Options& o, std::ostream& out, std::ostream& err) {
  const Natural n = parse_decimal(o.value_file.empty() ? o.value : read_file(o.value_file));
  const BaseTable table(o.cache_depth);
  VerifyOptions options;
  options.table = &table;
  options.budget_multiplier = o.budget_mult;
  if (o.progress) {
    options.progress = [&err](const HyperstepProgress& p) {
      err << "hyperstep " << p.hypersteps << ": block " << p.block_size << ", total "
          << p.condensed_steps << ", iterate " << p.iterate_bits << " bits\n";
    };
  }
  Sink sink(o.out_path, out);
  auto& os = sink.get();
  try {
    const auto record = hyperstep_verify(n, options);
    if (o.format == "json") {
      os << nlohmann::json{{"command", "verify-number"}, {"record", to_json(record)}}.dump(2)
         << '\n';
    } else if (o.format == "csv") {
      os << "start_digits,condensed_steps,hypersteps,reached_one,elapsed_seconds\n"
         << record.start_digits << ',' << record.condensed_steps << ',' << record.hypersteps
         << ',' << (record.reached_one ? "true" : "false") << ',' << record.elapsed_seconds
         << '\n';
    } else {
      os << "digits " << record.start_digits << "  steps " << record.condensed_steps
         << "  hypersteps " << record.hypersteps << "  reached_one "
         << (record.reached_one ? "yes" : "no") << "  seconds " << record.elapsed_seconds
         << '\n';
    }
    return kOk;
  } catch (const BudgetExhausted& e) {
    err << "verification anomaly: " << e.what() << '\n';
    if (o.format == "json") {
      os << nlohmann::json{{"command", "verify-number"},
                           {"error", e.what()},
                           {"steps_done", e.steps_done()},
                           {"iterate", e.iterate().get_str()}}
                .dump(2)
         << '\n';
    }
    return kVerificationAnomaly;
  }
}

int cmd_sieve(const Options& o, std::ostream& out) {
  SieveLimits limits;
  limits.max_states = o.max_states;
  if (o.k_max < 1 || o.k_max > kSieveHardKMax) {
    throw UsageError("--k-max must lie in [1, " + std::to_string(kSieveHardKMax) + "]");
  }
  limits.k_max = std::max(limits.k_max, o.k_max);

  std::function<void(const SieveLevel&)> emit;
  if (!o.emit_classes.empty()) {
    std::filesystem::create_directories(o.emit_classes);
    emit = [&o](const SieveLevel& level) {
      const auto path = std::filesystem::path(o.emit_classes) /
                        ("level_" + std::to_string(level.k) + ".txt");
      std::ofstream file(path);
      if (!file) throw UsageError("cannot write " + path.string());
      write_survivors(file, level);
    };
  }
  const auto counts = sieve_counts(o.k_max, limits, emit);

  Sink sink(o.out_path, out);
  auto& os = sink.get();
  if (o.format == "json") {
    auto j = sieve_json(counts);
    j["command"] = "sieve";
    os << j.dump(2) << '\n';
  } else if (o.format == "csv") {
    write_sieve_csv(os, counts);
  } else {
    os << "modulus  remaining\n";
    for (const auto& [k, count] : counts) {
      os << "2^" << std::left << std::setw(6) << k << std::right << ' ' << count << '\n';
    }
  }
  return kOk;
}

int cmd_selfcheck(const Options& o, std::ostream& out) {
  const BaseTable table(o.cache_depth);
  const auto results = run_selfcheck(table);
  Sink sink(o.out_path, out);
  auto& os = sink.get();
  if (o.format == "json") {
    os << selfcheck_json(results).dump(2) << '\n';
  } else {
    for (const auto& r : results) {
      os << (r.passed ? "PASS " : "FAIL ") << r.name;
      if (!r.passed) os << ": " << r.detail;
      os << '\n';
    }
  }
  const bool ok = std::all_of(results.begin(), results.end(),
                              [](const CheckResult& r) { return r.passed; });
  return ok ? kOk : kVerificationAnomaly;
}

}  // namespace

Natural parse_decimal(const std::string& text) {
  std::string digits;
  digits.reserve(text.size());
  for (const char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      throw UsageError(std::string("not a decimal digit: '") + ch + "'");
    }
    digits.push_back(ch);
  }
  if (digits.empty()) throw UsageError("empty number");
  Natural n(digits, 10);
  if (n < 1) throw UsageError("value must be a positive integer");
  return n;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Collatz verification with condensed iteration blocks", "collatz"};
  app.require_subcommand(1);
  Options o;

  auto* verify = app.add_subcommand("verify", "Verify random numbers of a given length");
  verify->add_option("--digits", o.digits, "Decimal length of each start value")
      ->required()
      ->expected(1)
      ->check(CLI::PositiveNumber);
  add_experiment_flags(verify, o);
  add_verify_flags(verify, o);
  add_format(verify, o);

  auto* verify_number = app.add_subcommand("verify-number", "Verify one given number");
  auto* input = verify_number->add_option_group("input", "Start value");
  input->add_option("--value", o.value, "Decimal start value");
  input->add_option("--value-file", o.value_file, "File holding the decimal value");
  input->require_option(1);
  verify_number->add_flag("--progress", o.progress, "Report each hyperstep on stderr");
  add_verify_flags(verify_number, o);
  add_format(verify_number, o);

  auto* sieve = app.add_subcommand("sieve", "Count surviving residue classes mod 2^k");
  sieve->add_option("--k-max", o.k_max, "Highest level")->required();
  sieve->add_option("--emit-classes", o.emit_classes,
                    "Directory receiving level_<k>.txt survivor lists");
  sieve->add_option("--max-states", o.max_states, "Abort if a level could exceed this size");
  add_format(sieve, o);

  auto* stats = app.add_subcommand("stats", "Step-count statistics per digit size");
  stats->add_option("--digits", o.digits, "One or more decimal lengths")
      ->required()
      ->check(CLI::PositiveNumber);
  add_experiment_flags(stats, o);
  add_verify_flags(stats, o);
  add_format(stats, o);

  auto* selfcheck = app.add_subcommand("selfcheck", "Run the small-scale oracle suites");
  selfcheck->add_option("--cache-depth", o.cache_depth, "Base table depth")
      ->check(CLI::Range(1u, kMaxCacheDepth));
  selfcheck->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}));
  selfcheck->add_option("--out", o.out_path, "Write output to PATH instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify(o, out);
    if (verify_number->parsed()) return cmd_verify_number(o, out, err);
    if (sieve->parsed()) return cmd_sieve(o, out);
    if (stats->parsed()) return cmd_stats(o, out);
    return cmd_selfcheck(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const SieveResourceError& e) {
    err << "resource guard: " << e.what() << '\n';
    return kResourceGuard;
  }
}

}  // namespace collatz::cli
