#pragma once

#include <optional>
#include <vector>

namespace prbtd {

/// F1 with the malicious class as positive; 0 when precision + recall is 0.
double f1_score(const std::vector<bool>& predicted_malicious,
                const std::vector<bool>& actual_malicious);

/// Mean final reputation of actual-normal users minus that of
/// actual-malicious users. Absent when either class is empty.
std::optional<double> reputation_distance(const std::vector<double>& final_reputations,
                                          const std::vector<bool>& actual_malicious);

struct NoiseReduction {
    double ratio = 0.0;
    bool all_data_removed = false;
};

/// 1 minus the ratio of mean noise in the kept reports to mean noise in all
/// reports. `noises` holds per-report relative noise |v - G| / max(|G|, eps).
/// A noise-free original yields 0; an empty kept set yields 1 with a flag.
NoiseReduction noise_reduction_ratio(const std::vector<double>& noises,
                                     const std::vector<bool>& kept);

/// Per-report relative noise against the true value.
double report_noise(double value, double truth);

struct MethodMetrics {
    double f1 = 0.0;
    std::optional<double> rep_distance;
    NoiseReduction noise;
};

/// Aggregates of one method across repetitions.
struct RunMetrics {
    std::vector<double> f1;
    std::vector<double> rep_distance;
    std::vector<double> noise_reduction;

    double mean_f1() const;
    double mean_rep_distance() const;
    double mean_noise_reduction() const;
};

}  // namespace prbtd
