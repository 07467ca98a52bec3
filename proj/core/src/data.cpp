#include "prbtd/data.hpp"

#include <algorithm>
#include <cmath>

namespace prbtd {

void SlotBatch::add(const SensingReport& report) {
    if (report.slot != slot_) {
        throw std::invalid_argument("SlotBatch::add: report slot does not match batch slot");
    }
    if (!std::isfinite(report.value)) {
        throw std::invalid_argument("SlotBatch::add: report value must be finite");
    }
    auto pos = std::lower_bound(reports_.begin(), reports_.end(), report,
                                [](const SensingReport& a, const SensingReport& b) {
                                    return a.mu < b.mu;
                                });
    if (pos != reports_.end() && pos->mu == report.mu) {
        throw std::invalid_argument("SlotBatch::add: duplicate report for mu in this slot");
    }
    reports_.insert(pos, report);
}

std::vector<SensingReport> SlotBatch::in_region(int region) const {
    std::vector<SensingReport> out;
    for (const auto& r : reports_) {
        if (r.region == region) out.push_back(r);
    }
    return out;
}

std::optional<double> slot_mean(const SlotBatch& batch, int region) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& r : batch.reports()) {
        if (r.region == region) {
            sum += r.value;
            ++count;
        }
    }
    if (count == 0) return std::nullopt;
    return sum / static_cast<double>(count);
}

MeanVector compute_means(const SlotBatch& batch, int region_count) {
    MeanVector mv;
    mv.slot = batch.slot();
    mv.means.assign(static_cast<std::size_t>(region_count), std::nullopt);
    std::vector<double> sums(static_cast<std::size_t>(region_count), 0.0);
    std::vector<std::size_t> counts(static_cast<std::size_t>(region_count), 0);
    for (const auto& r : batch.reports()) {
        sums[static_cast<std::size_t>(r.region - 1)] += r.value;
        counts[static_cast<std::size_t>(r.region - 1)] += 1;
    }
    for (int n = 0; n < region_count; ++n) {
        if (counts[static_cast<std::size_t>(n)] > 0) {
            mv.means[static_cast<std::size_t>(n)] =
                sums[static_cast<std::size_t>(n)] / static_cast<double>(counts[static_cast<std::size_t>(n)]);
        }
    }
    return mv;
}

void DataCache::update(SlotBatch batch) {
    if (!batches_.empty() && batch.slot() != batches_.back().slot() + 1) {
        throw std::invalid_argument("DataCache::update: slots must be ingested consecutively");
    }
    batches_.push_back(std::move(batch));
    if (batches_.size() > static_cast<std::size_t>(window_)) {
        batches_.pop_front();
    }
}

}  // namespace prbtd
