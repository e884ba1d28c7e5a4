#include "collatz/report.hpp"

namespace collatz {

namespace {

nlohmann::json optional_number(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json to_json(const TrajectoryRecord& record) {
  return {{"start_digits", record.start_digits},
          {"condensed_steps", record.condensed_steps},
          {"hypersteps", record.hypersteps},
          {"reached_one", record.reached_one},
          {"elapsed_seconds", record.elapsed_seconds}};
}

nlohmann::json to_json(const ExperimentSummary& summary) {
  return {{"n", summary.n},
          {"mean", summary.mean},
          {"std", summary.std},
          {"skewness", optional_number(summary.skewness)},
          {"kurtosis", optional_number(summary.kurtosis)},
          {"ks_statistic", optional_number(summary.ks_statistic)},
          {"ks_p_approx", optional_number(summary.ks_p_approx)},
          {"model_mean", summary.model_mean},
          {"mean_over_model", summary.mean_over_model}};
}

nlohmann::json to_json(const SampleOutcome& sample) {
  nlohmann::json j = {{"index", sample.index}, {"seed", sample.seed}};
  if (sample.record) {
    j.update(to_json(*sample.record));
  } else {
    j["error"] = sample.error;
    j["steps_done"] = sample.steps_done;
    j["iterate_bits"] = sample.iterate_bits;
  }
  return j;
}

nlohmann::json experiment_json(const ExperimentReport& report, bool include_records) {
  const auto& c = report.config;
  nlohmann::json j;
  j["config"] = {{"digits", c.digits},
                 {"count", c.count},
                 {"seed", c.seed},
                 {"budget_mult", c.budget_multiplier}};
  nlohmann::json records = nlohmann::json::array();
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& s : report.samples) {
    if (!s.record) {
      failures.push_back(to_json(s));
    } else if (include_records) {
      records.push_back(to_json(s));
    }
  }
  if (include_records) j["records"] = std::move(records);
  j["failures"] = std::move(failures);
  j["summary"] = report.summary ? to_json(*report.summary) : nlohmann::json(nullptr);
  return j;
}

void write_samples_csv(std::ostream& out, const ExperimentReport& report) {
  out << kSampleCsvHeader << '\n';
  for (const auto& s : report.samples) {
    out << s.index << ',' << s.seed << ',';
    if (s.record) {
      const auto& r = *s.record;
      out << r.start_digits << ',' << r.condensed_steps << ',' << r.hypersteps << ','
          << (r.reached_one ? "true" : "false") << ',' << r.elapsed_seconds << '\n';
    } else {
      out << report.config.digits << ',' << s.steps_done << ",,false,\n";
    }
  }
}

void write_sieve_csv(std::ostream& out, const std::vector<SieveCount>& counts) {
  out << "k,count\n";
  for (const auto& [k, count] : counts) out << k << ',' << count << '\n';
}

nlohmann::json sieve_json(const std::vector<SieveCount>& counts) {
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& [k, count] : counts) levels.push_back({{"k", k}, {"count", count}});
  return {{"k_max", counts.empty() ? 0u : counts.back().first}, {"levels", levels}};
}

nlohmann::json selfcheck_json(const std::vector<CheckResult>& results) {
  nlohmann::json suites = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    suites.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    all = all && r.passed;
  }
  return {{"passed", all}, {"suites", suites}};
}

void write_survivors(std::ostream& out, const SieveLevel& level) {
  for (const auto& s : level.survivors) out << s.residue << '\n';
}

}  // namespace collatz
