#include "prbtd/features.hpp"

#include <cmath>

namespace prbtd {

std::optional<double> sensing_error(double value, double ghat) {
    if (std::abs(ghat) < kPredictionEpsilon) return std::nullopt;
    return (value - ghat) / ghat;
}

std::optional<double> user_error(double value, double ghat, double delta_dot) {
    if (std::abs(ghat) < kPredictionEpsilon) return std::nullopt;
    return (value - (1.0 + delta_dot) * ghat) / ghat;
}

DataFeature scaled_feature(double value, double ghat, double delta_dot) {
    return {ghat * delta_dot, value - (1.0 + delta_dot) * ghat};
}

double implication(const DataFeature& f1, const DataFeature& f2) {
    const double n1 = std::sqrt(f1.a * f1.a + f1.b * f1.b);
    const double n2 = std::sqrt(f2.a * f2.a + f2.b * f2.b);
    if (n1 == 0.0 || n2 == 0.0) return 0.0;
    return (f1.a * f2.a + f1.b * f2.b) / (n1 * n2);
}

namespace {

double folded_mean(long long prev_count, double prev_delta, const std::vector<double>& errors) {
    const long long count = prev_count + static_cast<long long>(errors.size());
    if (count == 0) return 0.0;
    double sum = 0.0;
    for (double e : errors) sum += e;
    return (prev_delta * static_cast<double>(prev_count) + sum) / static_cast<double>(count);
}

}  // namespace

void CircumstanceState::update(int region, const std::vector<double>& errors) {
    auto& count = counts_.at(static_cast<std::size_t>(region - 1));
    auto& delta = delta_dot_.at(static_cast<std::size_t>(region - 1));
    delta = folded_mean(count, delta, errors);
    count += static_cast<long long>(errors.size());
}

double CircumstanceState::peek(int region, const std::vector<double>& errors) const {
    return folded_mean(counts_.at(static_cast<std::size_t>(region - 1)),
                       delta_dot_.at(static_cast<std::size_t>(region - 1)), errors);
}

}  // namespace prbtd
