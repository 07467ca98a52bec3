#include "prbtd/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace prbtd {

namespace {
constexpr double kNoiseEpsilon = 1e-9;

double mean_of(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}
}  // namespace

double f1_score(const std::vector<bool>& predicted_malicious,
                const std::vector<bool>& actual_malicious) {
    if (predicted_malicious.size() != actual_malicious.size()) {
        throw std::invalid_argument("f1_score: label vectors differ in size");
    }
    long long tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < predicted_malicious.size(); ++i) {
        if (predicted_malicious[i] && actual_malicious[i]) ++tp;
        else if (predicted_malicious[i] && !actual_malicious[i]) ++fp;
        else if (!predicted_malicious[i] && actual_malicious[i]) ++fn;
    }
    if (tp == 0) return 0.0;
    const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    const double recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
    if (precision + recall == 0.0) return 0.0;
    return 2.0 * precision * recall / (precision + recall);
}

std::optional<double> reputation_distance(const std::vector<double>& final_reputations,
                                          const std::vector<bool>& actual_malicious) {
    if (final_reputations.size() != actual_malicious.size()) {
        throw std::invalid_argument("reputation_distance: vector sizes differ");
    }
    double normal_sum = 0.0, malicious_sum = 0.0;
    long long normal_count = 0, malicious_count = 0;
    for (std::size_t i = 0; i < final_reputations.size(); ++i) {
        if (actual_malicious[i]) {
            malicious_sum += final_reputations[i];
            ++malicious_count;
        } else {
            normal_sum += final_reputations[i];
            ++normal_count;
        }
    }
    if (normal_count == 0 || malicious_count == 0) return std::nullopt;
    return normal_sum / static_cast<double>(normal_count) -
           malicious_sum / static_cast<double>(malicious_count);
}

double report_noise(double value, double truth) {
    return std::abs(value - truth) / std::max(std::abs(truth), kNoiseEpsilon);
}

NoiseReduction noise_reduction_ratio(const std::vector<double>& noises,
                                     const std::vector<bool>& kept) {
    if (noises.size() != kept.size()) {
        throw std::invalid_argument("noise_reduction_ratio: vector sizes differ");
    }
    NoiseReduction out;
    if (noises.empty()) return out;

    double total = 0.0;
    double kept_sum = 0.0;
    long long kept_count = 0;
    for (std::size_t i = 0; i < noises.size(); ++i) {
        total += noises[i];
        if (kept[i]) {
            kept_sum += noises[i];
            ++kept_count;
        }
    }
    const double mean_all = total / static_cast<double>(noises.size());
    if (kept_count == 0) {
        out.ratio = 1.0;
        out.all_data_removed = true;
        return out;
    }
    if (mean_all == 0.0) {
        out.ratio = 0.0;
        return out;
    }
    const double mean_kept = kept_sum / static_cast<double>(kept_count);
    out.ratio = 1.0 - mean_kept / mean_all;
    return out;
}

double RunMetrics::mean_f1() const { return mean_of(f1); }
double RunMetrics::mean_rep_distance() const { return mean_of(rep_distance); }
double RunMetrics::mean_noise_reduction() const { return mean_of(noise_reduction); }

}  // namespace prbtd
