#pragma once

#include <optional>
#include <vector>

namespace prbtd {

/// Predictions with magnitude below this are treated as numerically zero:
/// relative errors against them are undefined and only the scaled-feature
/// path remains valid.
inline constexpr double kPredictionEpsilon = 1e-9;

/// Relative sensing error (v - ghat) / ghat. Absent when |ghat| is below
/// kPredictionEpsilon.
std::optional<double> sensing_error(double value, double ghat);

/// User-related error component (v - (1 + delta_dot) * ghat) / ghat, i.e. the
/// part of the relative error not explained by the region circumstance.
/// Absent when |ghat| is below kPredictionEpsilon.
std::optional<double> user_error(double value, double ghat, double delta_dot);

/// Two-component error feature of a report, scaled by the predicted value so
/// it stays well-defined when the prediction is zero:
///   a = ghat * delta_dot
///   b = value - (1 + delta_dot) * ghat
struct DataFeature {
    double a = 0.0;
    double b = 0.0;

    bool degenerate() const { return a == 0.0 && b == 0.0; }
};

DataFeature scaled_feature(double value, double ghat, double delta_dot);

/// Degree of implication between two reports: cosine similarity of their
/// features, in [-1, 1]. Degenerate (zero-norm) features carry no
/// information and yield 0.
double implication(const DataFeature& f1, const DataFeature& f2);

/// Streaming estimate of the per-region circumstance-related error: the
/// running mean of all relative sensing errors observed in each region so
/// far. One update per slot folds that slot's errors into the estimate.
class CircumstanceState {
public:
    explicit CircumstanceState(int region_count)
        : counts_(static_cast<std::size_t>(region_count), 0),
          delta_dot_(static_cast<std::size_t>(region_count), 0.0) {}

    int region_count() const { return static_cast<int>(counts_.size()); }
    long long count(int region) const { return counts_.at(static_cast<std::size_t>(region - 1)); }
    double delta_dot(int region) const { return delta_dot_.at(static_cast<std::size_t>(region - 1)); }

    /// Folds the slot's errors for one region into the running estimate.
    /// Reports with an undefined error must be excluded by the caller.
    void update(int region, const std::vector<double>& errors);

    /// The estimate the given region would have after folding `errors` in,
    /// without committing it. Matches update() bit for bit.
    double peek(int region, const std::vector<double>& errors) const;

private:
    std::vector<long long> counts_;
    std::vector<double> delta_dot_;
};

}  // namespace prbtd
