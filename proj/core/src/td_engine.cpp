#include "prbtd/td_engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace prbtd {

void TdConfig::validate() const {
    if (!(0.0 < alpha && alpha < beta && beta < 1.0)) {
        throw std::invalid_argument("td config requires 0 < alpha < beta < 1");
    }
    if (!(0.0 < gamma && gamma < 1.0)) throw std::invalid_argument("gamma must be in (0, 1)");
    if (!(0.0 < rho && rho < 1.0)) throw std::invalid_argument("rho must be in (0, 1)");
    if (cache_length < 1) throw std::invalid_argument("cache_length must be >= 1");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
    if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
    if (!(0.0 < reputation_clamp && reputation_clamp < 0.5)) {
        throw std::invalid_argument("reputation_clamp must be in (0, 0.5)");
    }
    if (!(value_tolerance >= 0.0)) throw std::invalid_argument("value_tolerance must be >= 0");
    if (!(0.0 <= initial_reputation && initial_reputation <= 1.0)) {
        throw std::invalid_argument("initial_reputation must be in [0, 1]");
    }
}

double clamp_reputation(double r, double clamp) {
    return std::min(std::max(r, clamp), 1.0 - clamp);
}

double reputation_score(double r, double clamp) {
    return -std::log(1.0 - clamp_reputation(r, clamp));
}

double reputation_update_raw(double r, double q, const TdConfig& cfg) {
    if (q >= cfg.gamma) {
        return 0.5 * (1.0 + cfg.alpha * ((q - cfg.gamma) / (1.0 - cfg.gamma)) +
                      (1.0 - cfg.alpha) * (2.0 * r - 1.0));
    }
    return 0.5 * (1.0 + cfg.beta * ((q - cfg.gamma) / cfg.gamma) +
                  (1.0 - cfg.beta) * (2.0 * r - 1.0));
}

double reputation_update(double r, double q, const TdConfig& cfg) {
    return clamp_reputation(reputation_update_raw(r, q, cfg), cfg.reputation_clamp);
}

std::vector<int> matching_set(const SlotBatch& batch, int region, double value, int reporter,
                              double tolerance) {
    std::vector<int> mus;
    const double band = tolerance * std::max(std::abs(value), 1.0);
    for (const auto& r : batch.reports()) {
        if (r.region != region) continue;
        if (r.mu == reporter || std::abs(r.value - value) <= band) {
            mus.push_back(r.mu);
        }
    }
    return mus;  // batch reports are mu-sorted already
}

ReputationLedger::ReputationLedger(int mu_count, double initial)
    : current_(static_cast<std::size_t>(mu_count), initial) {
    history_.push_back(current_);
}

double expected_quality_score(const std::vector<int>& matching_mus, const ReputationLedger& ledger,
                              double clamp) {
    double score = 0.0;
    for (int mu : matching_mus) {
        score += reputation_score(ledger.reputation(mu), clamp);
    }
    return score;
}

TdEngine::TdEngine(const TdConfig& cfg, int region_count, int mu_count)
    : cfg_(cfg), region_count_(region_count), ledger_(mu_count, cfg.initial_reputation),
      circumstance_(region_count) {
    cfg_.validate();
}

SlotResult TdEngine::run_slot(const SlotBatch& batch,
                              const std::vector<std::optional<double>>& predictions) {
    if (batch.slot() != next_slot_) {
        throw std::invalid_argument("TdEngine::run_slot: slots must be processed consecutively");
    }
    if (static_cast<int>(predictions.size()) != region_count_) {
        throw std::invalid_argument("TdEngine::run_slot: prediction vector size mismatch");
    }
    const int slot = batch.slot();

    std::vector<CachedReport> entries;
    entries.reserve(batch.size());
    for (const auto& r : batch.reports()) {
        CachedReport e{r.mu, r.slot, r.region, r.value,
                       predictions[static_cast<std::size_t>(r.region - 1)], {}};
        e.matching = matching_set(batch, r.region, r.value, r.mu, cfg_.value_tolerance);
        entries.push_back(std::move(e));
    }

    if (static_cast<int>(cache_.size()) == cfg_.cache_length) cache_.pop_front();
    cache_.push_back(std::move(entries));
    const auto& current = cache_.back();

    // Fold this slot's errors into the per-region circumstance estimate.
    // Reports without a usable prediction stay out of the mean and the count.
    for (int n = 1; n <= region_count_; ++n) {
        std::vector<double> errors;
        for (const auto& e : current) {
            if (e.region != n || !e.ghat) continue;
            if (auto delta = sensing_error(e.value, *e.ghat)) errors.push_back(*delta);
        }
        circumstance_.update(n, errors);
    }

    // Features depend on the slot's circumstance estimate, not on
    // reputations, so the whole implication matrix is fixed for the slot.
    std::vector<std::optional<DataFeature>> current_features(current.size());
    for (std::size_t i = 0; i < current.size(); ++i) {
        if (current[i].ghat) {
            current_features[i] = scaled_feature(current[i].value, *current[i].ghat,
                                                 circumstance_.delta_dot(current[i].region));
        }
    }
    std::vector<const CachedReport*> cached_flat;
    std::vector<std::optional<DataFeature>> cached_features;
    for (const auto& slot_entries : cache_) {
        for (const auto& e : slot_entries) {
            cached_flat.push_back(&e);
            if (e.ghat) {
                cached_features.push_back(
                    scaled_feature(e.value, *e.ghat, circumstance_.delta_dot(e.region)));
            } else {
                cached_features.push_back(std::nullopt);
            }
        }
    }
    std::vector<std::vector<double>> imp(current.size(),
                                         std::vector<double>(cached_flat.size(), 0.0));
    for (std::size_t i = 0; i < current.size(); ++i) {
        if (!current_features[i]) continue;
        for (std::size_t j = 0; j < cached_flat.size(); ++j) {
            if (!cached_features[j]) continue;
            imp[i][j] = implication(*current_features[i], *cached_features[j]);
        }
    }

    SlotResult result;
    result.records.resize(current.size());

    int iterations = 0;
    bool converged = false;
    while (!converged && iterations < cfg_.max_iters) {
        ++iterations;
        const std::vector<double> old_reps = ledger_.current();
        double delta_max = 0.0;
        for (std::size_t i = 0; i < current.size(); ++i) {
            const auto& e = current[i];
            const double q_hat_score =
                expected_quality_score(e.matching, ledger_, cfg_.reputation_clamp);
            double imp_sum = 0.0;
            for (std::size_t j = 0; j < cached_flat.size(); ++j) {
                imp_sum += expected_quality_score(cached_flat[j]->matching, ledger_,
                                                  cfg_.reputation_clamp) *
                           imp[i][j];
            }
            const double overall_raw = q_hat_score + cfg_.rho * imp_sum;
            const double overall = std::max(overall_raw, 0.0);
            const double quality = 1.0 - std::exp(-overall);
            const double updated = reputation_update(ledger_.reputation(e.mu), quality, cfg_);
            ledger_.set(e.mu, updated);
            delta_max = std::max(delta_max,
                                 std::abs(updated - old_reps[static_cast<std::size_t>(e.mu - 1)]));

            auto& rec = result.records[i];
            rec.mu = e.mu;
            rec.slot = slot;
            rec.region = e.region;
            rec.value = e.value;
            rec.expected_quality = 1.0 - std::exp(-q_hat_score);
            rec.expected_quality_score = q_hat_score;
            rec.overall_score = overall;
            rec.quality = quality;
            rec.kept = quality >= cfg_.gamma;
        }
        converged = delta_max < cfg_.epsilon;
    }

    result.iterations = iterations;
    result.converged = converged;

    ledger_.commit_slot();
    next_slot_ = slot + 1;
    return result;
}

std::vector<bool> TdEngine::classify_malicious() const {
    return prbtd::classify_malicious(ledger_.current());
}

std::vector<bool> classify_malicious(const std::vector<double>& reputations) {
    std::vector<bool> out(reputations.size());
    for (std::size_t i = 0; i < reputations.size(); ++i) {
        out[i] = reputations[i] < kClassifyThreshold;
    }
    return out;
}

}  // namespace prbtd
