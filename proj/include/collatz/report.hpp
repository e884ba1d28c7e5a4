#pragma once

// JSON / CSV / text renderings of run results.  Field names are part of the
// command-line interface and stay fixed.

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "collatz/experiment.hpp"
#include "collatz/selfcheck.hpp"
#include "collatz/sieve.hpp"

namespace collatz {

nlohmann::json to_json(const TrajectoryRecord& record);
nlohmann::json to_json(const ExperimentSummary& summary);
nlohmann::json to_json(const SampleOutcome& sample);

/// {"config": ..., "records": [...], "failures": [...], "summary": ...}
nlohmann::json experiment_json(const ExperimentReport& report, bool include_records = true);

inline constexpr const char* kSampleCsvHeader =
    "index,seed,start_digits,condensed_steps,hypersteps,reached_one,elapsed_seconds";

void write_samples_csv(std::ostream& out, const ExperimentReport& report);
void write_sieve_csv(std::ostream& out, const std::vector<SieveCount>& counts);
nlohmann::json sieve_json(const std::vector<SieveCount>& counts);
nlohmann::json selfcheck_json(const std::vector<CheckResult>& results);

/// One residue per line, ascending.
void write_survivors(std::ostream& out, const SieveLevel& level);

}  // namespace collatz
