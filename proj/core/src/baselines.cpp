#include "prbtd/baselines.hpp"

#include <cmath>
#include <stdexcept>

namespace prbtd {

namespace {
constexpr double kDistanceEpsilon = 1e-9;  // regularizer in the weight rule
}

BaselineKind baseline_kind_from_string(const std::string& name) {
    if (name == "wei") return BaselineKind::wei;
    if (name == "cnb") return BaselineKind::cnb;
    if (name == "td") return BaselineKind::td;
    throw std::invalid_argument("unknown baseline kind: " + name);
}

std::string to_string(BaselineKind kind) {
    switch (kind) {
        case BaselineKind::wei: return "wei";
        case BaselineKind::cnb: return "cnb";
        case BaselineKind::td: return "td";
    }
    return "unknown";
}

double DistanceQualityMap::quality(double value, double estimate) const {
    const double delta =
        std::abs(value - estimate) / std::max(std::abs(estimate), kPredictionEpsilon);
    return std::exp(-delta / lambda);
}

std::optional<double> WeiEstimator::estimate(int region) const {
    const auto idx = static_cast<std::size_t>(region - 1);
    if (counts_.at(idx) == 0) return std::nullopt;
    return sums_[idx] / static_cast<double>(counts_[idx]);
}

void WeiEstimator::ingest(const SlotBatch& batch) {
    for (const auto& r : batch.reports()) {
        sums_.at(static_cast<std::size_t>(r.region - 1)) += r.value;
        counts_.at(static_cast<std::size_t>(r.region - 1)) += 1;
    }
}

TdEstimateResult td_estimate(const std::vector<double>& values, std::vector<double> weights,
                             double epsilon, int max_iters) {
    if (values.empty()) throw std::invalid_argument("td_estimate: needs at least one value");
    if (weights.size() != values.size()) {
        throw std::invalid_argument("td_estimate: weights size mismatch");
    }
    TdEstimateResult result;
    result.weights = std::move(weights);
    if (values.size() == 1) {
        result.estimate = values.front();
        return result;
    }

    auto weighted_mean = [&]() {
        double wsum = 0.0;
        double vsum = 0.0;
        for (std::size_t j = 0; j < values.size(); ++j) {
            wsum += result.weights[j];
            vsum += result.weights[j] * values[j];
        }
        if (wsum < kDistanceEpsilon) {
            double s = 0.0;
            for (double v : values) s += v;
            return s / static_cast<double>(values.size());
        }
        return vsum / wsum;
    };

    double estimate = weighted_mean();
    for (int it = 0; it < max_iters; ++it) {
        ++result.iterations;
        double denom = 0.0;
        for (double v : values) denom += std::abs(v - estimate) + kDistanceEpsilon;
        for (std::size_t j = 0; j < values.size(); ++j) {
            const double ratio = (std::abs(values[j] - estimate) + kDistanceEpsilon) / denom;
            result.weights[j] = std::max(0.0, -std::log(ratio));
        }
        const double next = weighted_mean();
        const bool done = std::abs(next - estimate) < epsilon * std::max(1.0, std::abs(estimate));
        estimate = next;
        if (done) break;
    }
    result.estimate = estimate;
    return result;
}

BaselineEngine::BaselineEngine(const BaselineConfig& cfg, int region_count, int mu_count)
    : cfg_(cfg), region_count_(region_count), ledger_(mu_count, cfg.td.initial_reputation),
      wei_(region_count), td_weights_(static_cast<std::size_t>(mu_count), 1.0) {
    cfg_.td.validate();
    if (cfg_.quality_map.lambda <= 0.0) {
        throw std::invalid_argument("distance quality lambda must be > 0");
    }
}

SlotResult BaselineEngine::run_slot(const SlotBatch& batch,
                                    const std::vector<std::optional<double>>& predictions) {
    if (batch.slot() != next_slot_) {
        throw std::invalid_argument("BaselineEngine::run_slot: slots must be consecutive");
    }
    SlotResult result;
    result.iterations = 1;

    // Per-report ground-truth estimates for this slot.
    std::vector<std::optional<double>> estimates(batch.size());
    const auto& reports = batch.reports();
    switch (cfg_.kind) {
        case BaselineKind::wei: {
            for (std::size_t i = 0; i < reports.size(); ++i) {
                estimates[i] = wei_.estimate(reports[i].region);
            }
            break;
        }
        case BaselineKind::cnb: {
            for (std::size_t i = 0; i < reports.size(); ++i) {
                estimates[i] = predictions.at(static_cast<std::size_t>(reports[i].region - 1));
            }
            break;
        }
        case BaselineKind::td: {
            int max_region_iters = 0;
            for (int n = 1; n <= region_count_; ++n) {
                std::vector<std::size_t> idx;
                std::vector<double> values;
                std::vector<double> weights;
                for (std::size_t i = 0; i < reports.size(); ++i) {
                    if (reports[i].region != n) continue;
                    idx.push_back(i);
                    values.push_back(reports[i].value);
                    weights.push_back(td_weights_[static_cast<std::size_t>(reports[i].mu - 1)]);
                }
                if (values.empty()) continue;
                auto agg = td_estimate(values, std::move(weights), cfg_.td.epsilon,
                                       cfg_.td.max_iters);
                max_region_iters = std::max(max_region_iters, agg.iterations);
                for (std::size_t j = 0; j < idx.size(); ++j) {
                    estimates[idx[j]] = agg.estimate;
                    if (values.size() > 1) {
                        td_weights_[static_cast<std::size_t>(reports[idx[j]].mu - 1)] =
                            agg.weights[j];
                    }
                }
            }
            result.iterations = std::max(1, max_region_iters);
            break;
        }
    }

    result.records.reserve(reports.size());
    for (std::size_t i = 0; i < reports.size(); ++i) {
        QualityRecord rec;
        rec.mu = reports[i].mu;
        rec.slot = batch.slot();
        rec.region = reports[i].region;
        rec.value = reports[i].value;
        if (estimates[i]) {
            const double q = cfg_.quality_map.quality(reports[i].value, *estimates[i]);
            rec.quality = q;
            rec.expected_quality = q;
            rec.expected_quality_score = -std::log1p(-std::min(q, 1.0 - cfg_.td.reputation_clamp));
            rec.overall_score = rec.expected_quality_score;
            rec.kept = q >= cfg_.td.gamma;
            ledger_.set(reports[i].mu,
                        reputation_update(ledger_.reputation(reports[i].mu), q, cfg_.td));
        } else {
            // No estimate available: keep the report, leave the reputation be.
            rec.quality = 1.0;
            rec.expected_quality = 1.0;
            rec.kept = true;
        }
        result.records.push_back(rec);
    }

    if (cfg_.kind == BaselineKind::wei) wei_.ingest(batch);
    ledger_.commit_slot();
    next_slot_ = batch.slot() + 1;
    return result;
}

std::vector<bool> BaselineEngine::classify_malicious() const {
    return prbtd::classify_malicious(ledger_.current());
}

}  // namespace prbtd
