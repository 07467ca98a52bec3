#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prbtd/baselines.hpp"
#include "prbtd/metrics.hpp"
#include "prbtd/predictor.hpp"
#include "prbtd/simulator.hpp"
#include "prbtd/td_engine.hpp"

namespace prbtd {

enum class Method { prbtd, wei, cnb, td };

Method method_from_string(const std::string& name);
std::string to_string(Method method);

struct ExperimentConfig {
    ScenarioConfig scenario;
    TdConfig td;
    PredictorConfig predictor;
    DistanceQualityMap quality_map;
    std::vector<Method> methods = {Method::prbtd, Method::wei, Method::cnb, Method::td};
    int repetitions = 6;
    std::optional<std::string> data_dir;  // run on files instead of simulating

    void validate() const;
};

/// Parses the `key = value` configuration format; every key mirrors one
/// config field. Unknown keys and invalid values raise ConfigError.
ExperimentConfig parse_experiment_config(const std::string& text);
ExperimentConfig load_experiment_config(const std::string& path);
/// The resolved configuration in the same format, fixed key order.
std::string render_experiment_config(const ExperimentConfig& cfg);

/// Ground-truth predictions for one slot: the configured predictor first,
/// a moving-average fallback for regions the seasonal lookback cannot
/// serve, then the most recent available mean.
std::vector<std::optional<double>> resolve_predictions(const MeanHistory& history, int slot,
                                                       int region_count,
                                                       const PredictorConfig& cfg,
                                                       const PredictionGrid* grid);

struct MethodRunResult {
    Method method = Method::prbtd;
    std::vector<QualityRecord> records;  // all slots, slot-major
    std::vector<int> iterations_per_slot;
    std::vector<bool> converged_per_slot;
    std::vector<std::vector<double>> reputation_history;  // [0]=initial, then per slot
    std::vector<double> final_reputations;
    std::vector<bool> predicted_malicious;
    MethodMetrics metrics;
    double mean_slot_seconds = 0.0;
    double max_slot_seconds = 0.0;
    int non_converged_slots = 0;
};

/// Runs one method over a simulated world. `actual_malicious` may be absent
/// for externally supplied data; label metrics are NaN then.
MethodRunResult run_method(const World& world, Method method, const ExperimentConfig& cfg,
                           const std::optional<std::vector<bool>>& actual_malicious);

struct RepetitionResult {
    std::uint64_t seed = 0;
    std::vector<MethodRunResult> methods;
};

struct ExperimentResult {
    std::vector<RepetitionResult> repetitions;
    std::map<Method, RunMetrics> aggregates;
};

/// Repeats the experiment with seeds scenario.seed, scenario.seed + 1, ...
/// and aggregates per-method metric means.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Command entry points shared by the CLI binary and the tests. They throw
/// ConfigError / IoError / MissingInputError; main() maps those to exit
/// codes 2 / 3 / 4.
void cmd_simulate(const ExperimentConfig& cfg, const std::string& out_dir);
void cmd_run(const ExperimentConfig& cfg, const std::string& out_dir);
void cmd_sweep(const ExperimentConfig& cfg, const std::string& axis, const std::string& out_dir);

}  // namespace prbtd
