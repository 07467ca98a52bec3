#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "prbtd/data.hpp"
#include "prbtd/grid.hpp"

namespace prbtd {

/// Synthetic spatio-temporal ground truth covering the task slots [1, T] plus
/// `history_len` pre-task slots [1 - history_len, 0] that predictors may use
/// as training history. Values are finite and positive.
class GroundTruthSeries {
public:
    GroundTruthSeries(int task_slots, int region_count, int history_len)
        : task_slots_(task_slots), region_count_(region_count), history_len_(history_len),
          values_(static_cast<std::size_t>((task_slots + history_len) * region_count), 0.0) {}

    int task_slots() const { return task_slots_; }
    int region_count() const { return region_count_; }
    int history_len() const { return history_len_; }
    int first_slot() const { return 1 - history_len_; }

    double at(int slot, int region) const { return values_[offset(slot, region)]; }
    void set(int slot, int region, double v) { values_[offset(slot, region)] = v; }

private:
    std::size_t offset(int slot, int region) const {
        return static_cast<std::size_t>((slot - first_slot()) * region_count_ + (region - 1));
    }

    int task_slots_;
    int region_count_;
    int history_len_;
    std::vector<double> values_;
};

struct BurstyWindow {
    int start_slot = 0;   // inclusive
    int slot_len = 0;
    int start_region = 0; // inclusive, consecutive flat indices
    int region_span = 0;

    bool covers(int slot, int region) const {
        return slot >= start_slot && slot < start_slot + slot_len && region >= start_region &&
               region < start_region + region_span;
    }
};

struct ScenarioConfig {
    int mu_count = 100;               // I
    double malicious_fraction = 0.1;
    int submissions_per_mu = 30;      // k
    int slot_count = 120;             // T
    int grid_height = 4;
    int grid_width = 8;
    double malicious_mean = 0.3;      // mu of the injected relative error
    double malicious_stddev = 0.1;    // sigma of the injected relative error
    double normal_noise = 0.0;        // optional relative noise for normal users
    std::uint64_t seed = 1;
    int history_len = 48;

    // Scenario injectors; all off by default.
    bool bursty = false;
    int bursty_sets = 3;
    int bursty_slot_len = 7;
    int bursty_region_span = 4;
    double bursty_scale = 0.5;
    std::optional<double> sparsity;        // fraction of reports retained
    std::optional<double> clean_fraction;  // fraction of history left untouched
    std::optional<double> low_noise_mu;    // overrides malicious_mean

    int region_count() const { return grid_height * grid_width; }
    double effective_malicious_mean() const {
        return low_noise_mu ? *low_noise_mu : malicious_mean;
    }
    void validate() const;
};

struct MuProfile {
    int id = 0;
    bool malicious = false;
    std::vector<std::pair<int, int>> schedule;  // (slot, region), slot-sorted
};

/// The complete generated scenario a method run consumes.
struct World {
    RegionGrid grid;
    GroundTruthSeries truth;
    std::vector<MuProfile> profiles;
    std::vector<SlotBatch> batches;          // one per task slot
    std::vector<BurstyWindow> bursty_windows;
};

/// Deterministic synthetic truth: spatially correlated per-region base
/// levels, a daily seasonal component and smooth low-frequency noise.
GroundTruthSeries generate_truth(int task_slots, int region_count, std::uint64_t seed,
                                 int history_len = 48);

/// Population with floor(I * malicious_fraction) malicious users; every user
/// gets `k` distinct slots and a uniform region per slot.
std::vector<MuProfile> build_population(const ScenarioConfig& cfg);

/// Reports for every task slot: normal users sense the truth (plus optional
/// noise), malicious users multiply it by 1 + e with e ~ N(mu, sigma^2).
std::vector<SlotBatch> emit_reports(const GroundTruthSeries& truth,
                                    const std::vector<MuProfile>& profiles,
                                    const ScenarioConfig& cfg);

/// Applies the configured injectors in place: bursty halves the truth (and
/// the already-sensed reports) on disjoint slot-region windows, sparsity
/// drops a uniform fraction of reports, and the noisy-history injector
/// perturbs pre-task truth cells by 1 + xi with xi ~ N(0, 0.1^2).
void inject_scenarios(GroundTruthSeries& truth, std::vector<SlotBatch>& batches,
                      std::vector<BurstyWindow>& windows, const ScenarioConfig& cfg);

/// generate + populate + emit + inject.
World simulate(const ScenarioConfig& cfg);

}  // namespace prbtd
