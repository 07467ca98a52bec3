#pragma once

#include <deque>
#include <optional>
#include <vector>

#include "prbtd/data.hpp"
#include "prbtd/features.hpp"

namespace prbtd {

/// Users whose final reputation falls below this are classified malicious.
inline constexpr double kClassifyThreshold = 0.5;

struct TdConfig {
    double alpha = 0.018;          // reputation increase rate
    double beta = 0.06;            // reputation decrease rate
    double gamma = 0.5;            // quality threshold
    double rho = 0.02;             // implication weight
    int cache_length = 5;          // l: slots kept for implication lookups
    double epsilon = 0.001;        // convergence threshold on reputation change
    int max_iters = 100;           // iteration cap for the alternating loop
    double reputation_clamp = 0.001;  // keeps -ln(1 - r) finite
    double value_tolerance = 1e-9;    // relative tolerance for value equality
    double initial_reputation = 0.5;

    void validate() const;
};

double clamp_reputation(double r, double clamp);

/// Reputation score R = -ln(1 - r), computed on the clamped reputation so it
/// stays finite as r approaches 1.
double reputation_score(double r, double clamp);

/// One reputation update step: quality at or above gamma pulls the
/// reputation up at rate alpha, quality below gamma pushes it down at rate
/// beta. Result is not clamped.
double reputation_update_raw(double r, double q, const TdConfig& cfg);

/// reputation_update_raw followed by the clamp to
/// [reputation_clamp, 1 - reputation_clamp].
double reputation_update(double r, double q, const TdConfig& cfg);

/// Users in `batch` whose report lies in `region` and whose value matches
/// `value` within the relative tolerance; always contains the reporter.
/// Returned ids are ascending.
std::vector<int> matching_set(const SlotBatch& batch, int region, double value, int reporter,
                              double tolerance);

/// Per-user reputations with full per-slot history. history()[0] holds the
/// initial reputations, followed by one snapshot per committed slot.
class ReputationLedger {
public:
    ReputationLedger(int mu_count, double initial);

    int mu_count() const { return static_cast<int>(current_.size()); }
    double reputation(int mu) const { return current_.at(static_cast<std::size_t>(mu - 1)); }
    const std::vector<double>& current() const { return current_; }
    void set(int mu, double r) { current_.at(static_cast<std::size_t>(mu - 1)) = r; }

    void commit_slot() { history_.push_back(current_); }
    const std::vector<std::vector<double>>& history() const { return history_; }

private:
    std::vector<double> current_;
    std::vector<std::vector<double>> history_;
};

/// Sum of the reputation scores of a matching set, evaluated against live
/// reputations. Equals -ln(1 - q_hat) of the product-form expected quality.
double expected_quality_score(const std::vector<int>& matching_mus, const ReputationLedger& ledger,
                              double clamp);

struct QualityRecord {
    int mu = 0;
    int slot = 0;
    int region = 0;
    double value = 0.0;
    double expected_quality = 0.0;        // q_hat
    double expected_quality_score = 0.0;  // Q_hat
    double overall_score = 0.0;           // Q, floored at 0
    double quality = 0.0;                 // q = 1 - e^-Q
    bool kept = false;                    // q >= gamma
};

struct SlotResult {
    std::vector<QualityRecord> records;  // in reporter (mu) order
    int iterations = 0;
    bool converged = true;
};

/// Reputation-based truth discovery over consecutive slots.
///
/// Each slot is scored by alternating quality and reputation updates until
/// the largest reputation change falls below epsilon. Quality combines the
/// reporter's matching-set score with implication-weighted scores of every
/// cached report; implications and circumstance errors do not depend on
/// reputations and are computed once per slot.
class TdEngine {
public:
    TdEngine(const TdConfig& cfg, int region_count, int mu_count);

    /// Scores one slot batch against per-region predictions (absent entries
    /// fall back to reputation-only scoring) and advances all engine state.
    SlotResult run_slot(const SlotBatch& batch,
                        const std::vector<std::optional<double>>& predictions);

    const ReputationLedger& ledger() const { return ledger_; }
    const CircumstanceState& circumstance() const { return circumstance_; }
    const TdConfig& config() const { return cfg_; }

    /// true = malicious (current reputation below kClassifyThreshold).
    std::vector<bool> classify_malicious() const;

private:
    struct CachedReport {
        int mu;
        int slot;
        int region;
        double value;
        std::optional<double> ghat;
        std::vector<int> matching;
    };

    TdConfig cfg_;
    int region_count_;
    ReputationLedger ledger_;
    CircumstanceState circumstance_;
    std::deque<std::vector<CachedReport>> cache_;
    int next_slot_ = 1;
};

/// Malicious labels from any reputation vector (true = malicious).
std::vector<bool> classify_malicious(const std::vector<double>& reputations);

}  // namespace prbtd
