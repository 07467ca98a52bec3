#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prbtd/data.hpp"
#include "prbtd/td_engine.hpp"

namespace prbtd {

enum class BaselineKind { wei, cnb, td };

BaselineKind baseline_kind_from_string(const std::string& name);
std::string to_string(BaselineKind kind);

/// Maps the relative distance between a value and an estimated ground truth
/// to a quality level via q = exp(-delta / lambda). delta = 0 gives 1 and
/// quality decays strictly with distance.
struct DistanceQualityMap {
    double lambda = 0.3;

    double quality(double value, double estimate) const;
};

/// Running per-region average of every value observed so far; the WEI
/// baseline estimates the ground truth of a slot from all data prior to it.
class WeiEstimator {
public:
    explicit WeiEstimator(int region_count)
        : sums_(static_cast<std::size_t>(region_count), 0.0),
          counts_(static_cast<std::size_t>(region_count), 0) {}

    std::optional<double> estimate(int region) const;
    void ingest(const SlotBatch& batch);

private:
    std::vector<double> sums_;
    std::vector<long long> counts_;
};

/// One truth-discovery aggregation over the reports of a region batch.
/// Estimates the weighted mean, rescores weights from distances with the
/// log-ratio rule w = max(0, -ln((e_j + eps) / sum_k (e_k + eps))), and
/// alternates until the estimate moves less than epsilon. A single report
/// returns its own value and leaves the weights untouched.
struct TdEstimateResult {
    double estimate = 0.0;
    std::vector<double> weights;  // parallel to the input values
    int iterations = 0;
};

TdEstimateResult td_estimate(const std::vector<double>& values, std::vector<double> weights,
                             double epsilon, int max_iters);

struct BaselineConfig {
    BaselineKind kind = BaselineKind::td;
    DistanceQualityMap quality_map;
    TdConfig td;  // shared reputation update parameters and thresholds
};

/// Comparator pipeline: estimate a ground truth per report, map distance to
/// quality, keep reports with quality at or above gamma, and feed the same
/// reputation update as the main engine. Reports without an available
/// estimate are kept unscored and leave the reputation unchanged.
class BaselineEngine {
public:
    BaselineEngine(const BaselineConfig& cfg, int region_count, int mu_count);

    /// `predictions` is only consulted by the cnb kind.
    SlotResult run_slot(const SlotBatch& batch,
                        const std::vector<std::optional<double>>& predictions);

    const ReputationLedger& ledger() const { return ledger_; }
    const std::vector<double>& td_weights() const { return td_weights_; }
    std::vector<bool> classify_malicious() const;

private:
    BaselineConfig cfg_;
    int region_count_;
    ReputationLedger ledger_;
    WeiEstimator wei_;
    std::vector<double> td_weights_;  // per mu, persisted across slots
    int next_slot_ = 1;
};

}  // namespace prbtd
