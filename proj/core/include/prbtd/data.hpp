#pragma once

#include <deque>
#include <optional>
#include <stdexcept>
#include <vector>

namespace prbtd {

/// One sensing submission: mobile user `mu` reports `value` for `region`
/// during time slot `slot`. Slots, regions and user ids are 1-based.
struct SensingReport {
    int mu = 0;
    int slot = 0;
    int region = 0;
    double value = 0.0;
};

/// All reports of one time slot, kept sorted by reporting user. A user may
/// contribute at most one report per slot; duplicates are rejected at insert.
class SlotBatch {
public:
    explicit SlotBatch(int slot) : slot_(slot) {}

    int slot() const { return slot_; }
    bool empty() const { return reports_.empty(); }
    std::size_t size() const { return reports_.size(); }
    const std::vector<SensingReport>& reports() const { return reports_; }

    /// Inserts a report, keeping mu order. Throws if the report belongs to a
    /// different slot or the user already reported in this slot.
    void add(const SensingReport& report);

    /// Reports for one region, in mu order.
    std::vector<SensingReport> in_region(int region) const;

private:
    int slot_;
    std::vector<SensingReport> reports_;
};

/// Per-region mean of the values reported in one slot; empty regions have no
/// entry rather than a zero.
struct MeanVector {
    int slot = 0;
    std::vector<std::optional<double>> means;  // index region-1

    std::optional<double> at(int region) const { return means.at(region - 1); }
};

/// Mean of the values reported for `region` in `batch`; absent when the
/// region has no reports.
std::optional<double> slot_mean(const SlotBatch& batch, int region);

/// Means for all regions of a batch.
MeanVector compute_means(const SlotBatch& batch, int region_count);

/// Rolling window over the most recent `window` slot batches. Slots must be
/// ingested consecutively; once more than `window` batches are present the
/// oldest is evicted.
class DataCache {
public:
    explicit DataCache(int window) : window_(window) {
        if (window < 1) throw std::invalid_argument("DataCache: window must be positive");
    }

    int window() const { return window_; }
    bool empty() const { return batches_.empty(); }
    std::size_t size() const { return batches_.size(); }
    const std::deque<SlotBatch>& batches() const { return batches_; }

    int oldest_slot() const { return batches_.front().slot(); }
    int latest_slot() const { return batches_.back().slot(); }

    /// Appends the next slot batch. Throws on a non-consecutive slot.
    void update(SlotBatch batch);

private:
    int window_;
    std::deque<SlotBatch> batches_;
};

}  // namespace prbtd
