#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "prbtd/data.hpp"
#include "prbtd/simulator.hpp"
#include "prbtd/td_engine.hpp"

namespace prbtd {

/// Invalid or unparsable configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Filesystem failure while reading or writing artifacts (CLI exit code 3).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Required input files are not present (CLI exit code 4).
struct MissingInputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Shortest round-trip decimal form of a double; keeps emitted files
/// byte-stable across runs.
std::string format_double(double v);

/// Reports: delimited text, header `mu,slot,region,value`, 1-based indices.
void write_reports(const std::string& path, const std::vector<SlotBatch>& batches);
std::vector<SlotBatch> read_reports(const std::string& path, int slot_count);

/// Series export `slot,region,value`; task slots and pre-task history slots
/// go to separate files (history slots are at or before 0).
void write_truth(const std::string& path, const GroundTruthSeries& truth);
void write_history(const std::string& path, const GroundTruthSeries& truth);
/// Reads both files back into one series.
GroundTruthSeries read_series(const std::string& truth_path,
                              const std::optional<std::string>& history_path, int region_count);

/// Population labels `mu,malicious`.
void write_profiles(const std::string& path, const std::vector<MuProfile>& profiles);
/// Malicious flags indexed by mu - 1; absent if the file does not exist.
std::optional<std::vector<bool>> read_profiles(const std::string& path, int mu_count);

/// Per-slot scoring records `slot,mu,region,value,q,kept,iterations,converged`
/// with an optional leading `method` column for comparator runs.
void write_records(const std::string& path, const std::vector<QualityRecord>& records,
                   const std::vector<int>& iterations_per_slot,
                   const std::vector<bool>& converged_per_slot,
                   const std::optional<std::string>& method);

/// Reputation trajectories `slot,mu,reputation`, slot 0 being the initial
/// reputations.
void write_reputations(const std::string& path,
                       const std::vector<std::vector<double>>& history);

/// Simple `key = value` configuration text; `#` starts a comment.
std::map<std::string, std::string> parse_key_values(const std::string& text);

}  // namespace prbtd
