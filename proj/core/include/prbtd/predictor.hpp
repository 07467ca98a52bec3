#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prbtd/data.hpp"

namespace prbtd {

/// Predicted ground truth per (slot, region); cells without a prediction are
/// absent. Slots may be sparse and need not start at 1.
class PredictionGrid {
public:
    PredictionGrid() = default;
    explicit PredictionGrid(int region_count) : region_count_(region_count) {}

    int region_count() const { return region_count_; }
    bool has_slot(int slot) const { return cells_.count(slot) != 0; }

    std::optional<double> at(int slot, int region) const;
    void set(int slot, int region, double value);

    /// Full per-region row for one slot (all absent when the slot is unknown).
    std::vector<std::optional<double>> row(int slot) const;

private:
    int region_count_ = 0;
    std::map<int, std::vector<std::optional<double>>> cells_;
};

enum class PredictorKind { persistence, moving_average, seasonal_naive, oracle_noisy, external };

struct PredictorConfig {
    PredictorKind kind = PredictorKind::seasonal_naive;
    int window = 5;           // p: input slots for moving_average
    int seasonal_period = 48; // S: lookback for seasonal_naive
    double oracle_noise = 0.0;  // relative noise stddev for oracle_noisy
    std::string external_path;  // source for external predictions

    void validate() const;
};

PredictorKind predictor_kind_from_string(const std::string& name);
std::string to_string(PredictorKind kind);

/// Ordered per-slot mean history. Slots at or before 0 hold pre-task
/// historical means; task slots are appended as batches are observed.
using MeanHistory = std::map<int, MeanVector>;

/// One predicted value per region for `target_slot`, derived from strictly
/// earlier mean vectors:
///   persistence     - the previous slot's mean
///   moving_average  - mean of the entries present in the last `window` slots
///   seasonal_naive  - the mean observed one seasonal period earlier
/// Regions whose required history is absent get no prediction.
std::vector<std::optional<double>> predict(const MeanHistory& history, int target_slot,
                                           int region_count, const PredictorConfig& cfg);

/// The most recent available mean per region strictly before `target_slot`;
/// the last fallback of the prediction chain.
std::vector<std::optional<double>> latest_means(const MeanHistory& history, int target_slot,
                                                int region_count);

/// Controlled stand-in for a trained forecaster: the true series perturbed by
/// per-cell relative Gaussian noise of stddev `sigma`, deterministic in
/// `seed`. `truth` maps slot -> per-region true values.
PredictionGrid oracle_predict(const std::map<int, std::vector<double>>& truth, double sigma,
                              std::uint64_t seed);

/// Loads predictions from a delimited file with header `slot,region,ghat`.
/// Throws std::runtime_error with the offending line number on parse errors.
PredictionGrid load_external(const std::string& path, int region_count);

}  // namespace prbtd
