#include <doctest.h>

#include <cmath>
#include <set>

#include "prbtd/simulator.hpp"

using namespace prbtd;

namespace {

ScenarioConfig table_defaults() {
    ScenarioConfig cfg;
    cfg.seed = 2024;
    return cfg;
}

bool batches_equal(const std::vector<SlotBatch>& a, const std::vector<SlotBatch>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != b[i].size()) return false;
        for (std::size_t j = 0; j < a[i].reports().size(); ++j) {
            const auto& x = a[i].reports()[j];
            const auto& y = b[i].reports()[j];
            if (x.mu != y.mu || x.slot != y.slot || x.region != y.region || x.value != y.value) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

TEST_CASE("scenario validation enforces the documented bounds") {
    ScenarioConfig cfg = table_defaults();
    CHECK_NOTHROW(cfg.validate());
    cfg.malicious_fraction = 0.5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = table_defaults();
    cfg.submissions_per_mu = cfg.slot_count;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = table_defaults();
    cfg.sparsity = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("truth generation is deterministic, positive and seasonal-scaled") {
    const auto a = generate_truth(120, 32, 7);
    const auto b = generate_truth(120, 32, 7);
    const auto c = generate_truth(120, 32, 8);
    bool identical = true;
    bool differs_from_c = false;
    for (int slot = a.first_slot(); slot <= a.task_slots(); ++slot) {
        for (int n = 1; n <= 32; ++n) {
            identical = identical && a.at(slot, n) == b.at(slot, n);
            differs_from_c = differs_from_c || a.at(slot, n) != c.at(slot, n);
            CHECK(a.at(slot, n) > 0.0);
        }
    }
    CHECK(identical);
    CHECK(differs_from_c);
}

TEST_CASE("adjacent regions have correlated base levels within a bounded ratio") {
    const auto truth = generate_truth(120, 32, 99);
    const RegionGrid grid(4, 8);

    std::vector<double> base(32, 0.0);
    for (int n = 1; n <= 32; ++n) {
        double sum = 0.0;
        for (int slot = 1; slot <= 120; ++slot) sum += truth.at(slot, n);
        base[static_cast<std::size_t>(n - 1)] = sum / 120.0;
    }

    std::vector<std::pair<double, double>> pairs;
    for (int h = 1; h <= 4; ++h) {
        for (int w = 1; w <= 8; ++w) {
            const int n = grid.index(h, w);
            if (w < 8) pairs.emplace_back(base[n - 1], base[grid.index(h, w + 1) - 1]);
            if (h < 4) pairs.emplace_back(base[n - 1], base[grid.index(h + 1, w) - 1]);
        }
    }
    double mx = 0.0, my = 0.0;
    for (auto [x, y] : pairs) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(pairs.size());
    my /= static_cast<double>(pairs.size());
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (auto [x, y] : pairs) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    const double pearson = sxy / std::sqrt(sxx * syy);
    CHECK(pearson >= 0.5);

    // Seasonal mean levels of neighbors stay within the 20% band the
    // generator enforces on base levels.
    for (auto [x, y] : pairs) {
        const double ratio = x > y ? x / y : y / x;
        CHECK(ratio <= 1.25);  // small slack: time means fold in noise
    }
}

TEST_CASE("population split, schedules and determinism") {
    ScenarioConfig cfg = table_defaults();
    const auto profiles = build_population(cfg);
    REQUIRE(profiles.size() == 100);
    int malicious = 0;
    for (const auto& p : profiles) {
        if (p.malicious) ++malicious;
        REQUIRE(p.schedule.size() == 30);
        std::set<int> slots;
        for (auto [slot, region] : p.schedule) {
            CHECK(slot >= 1);
            CHECK(slot <= cfg.slot_count);
            CHECK(region >= 1);
            CHECK(region <= cfg.region_count());
            CHECK(slots.insert(slot).second);  // distinct slots
        }
    }
    CHECK(malicious == 10);

    const auto again = build_population(cfg);
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        CHECK(profiles[i].malicious == again[i].malicious);
        CHECK(profiles[i].schedule == again[i].schedule);
    }
}

TEST_CASE("normal reports equal the truth exactly when noise is off") {
    ScenarioConfig cfg = table_defaults();
    const World world = simulate(cfg);
    for (const auto& batch : world.batches) {
        for (const auto& r : batch.reports()) {
            if (!world.profiles[static_cast<std::size_t>(r.mu - 1)].malicious) {
                CHECK(r.value == world.truth.at(r.slot, r.region));
            }
        }
    }
}

TEST_CASE("malicious relative errors have the configured mean") {
    ScenarioConfig cfg = table_defaults();
    cfg.mu_count = 206;
    cfg.malicious_fraction = 0.49;  // 100 malicious users
    cfg.slot_count = 101;
    cfg.submissions_per_mu = 100;   // 10000 malicious draws
    const World world = simulate(cfg);

    std::vector<double> errors;
    for (const auto& batch : world.batches) {
        for (const auto& r : batch.reports()) {
            if (world.profiles[static_cast<std::size_t>(r.mu - 1)].malicious) {
                errors.push_back(r.value / world.truth.at(r.slot, r.region) - 1.0);
            }
        }
    }
    REQUIRE(errors.size() == 10000);
    double mean = 0.0;
    for (double e : errors) mean += e;
    mean /= static_cast<double>(errors.size());
    CHECK(std::abs(mean - cfg.malicious_mean) <= 3.0 * cfg.malicious_stddev / 100.0);
}

TEST_CASE("no user reports twice in one slot across the generated stream") {
    const World world = simulate(table_defaults());
    for (const auto& batch : world.batches) {
        std::set<int> mus;
        for (const auto& r : batch.reports()) CHECK(mus.insert(r.mu).second);
    }
}

TEST_CASE("bursty scales disjoint windows of truth and reports") {
    ScenarioConfig cfg = table_defaults();
    const World plain = simulate(cfg);
    cfg.bursty = true;
    const World burst = simulate(cfg);

    REQUIRE(burst.bursty_windows.size() == 3);
    long long cells = 0;
    for (const auto& w : burst.bursty_windows) {
        cells += static_cast<long long>(w.slot_len) * w.region_span;
    }
    CHECK(cells == 84);

    for (std::size_t i = 0; i < burst.bursty_windows.size(); ++i) {
        for (std::size_t j = i + 1; j < burst.bursty_windows.size(); ++j) {
            const auto& a = burst.bursty_windows[i];
            const auto& b = burst.bursty_windows[j];
            const bool slot_overlap = a.start_slot < b.start_slot + b.slot_len &&
                                      b.start_slot < a.start_slot + a.slot_len;
            const bool region_overlap = a.start_region < b.start_region + b.region_span &&
                                        b.start_region < a.start_region + a.region_span;
            CHECK_FALSE((slot_overlap && region_overlap));
        }
    }

    for (int slot = 1; slot <= cfg.slot_count; ++slot) {
        for (int n = 1; n <= cfg.region_count(); ++n) {
            bool covered = false;
            for (const auto& w : burst.bursty_windows) covered = covered || w.covers(slot, n);
            const double expected =
                covered ? plain.truth.at(slot, n) * 0.5 : plain.truth.at(slot, n);
            CHECK(burst.truth.at(slot, n) == doctest::Approx(expected).epsilon(1e-15));
        }
    }
    for (std::size_t b = 0; b < burst.batches.size(); ++b) {
        const auto& plain_reports = plain.batches[b].reports();
        const auto& burst_reports = burst.batches[b].reports();
        REQUIRE(plain_reports.size() == burst_reports.size());
        for (std::size_t r = 0; r < burst_reports.size(); ++r) {
            bool covered = false;
            for (const auto& w : burst.bursty_windows) {
                covered = covered || w.covers(burst_reports[r].slot, burst_reports[r].region);
            }
            const double expected = covered ? plain_reports[r].value * 0.5
                                            : plain_reports[r].value;
            CHECK(burst_reports[r].value == doctest::Approx(expected).epsilon(1e-15));
        }
    }
}

TEST_CASE("sparsity keeps the rounded fraction of reports") {
    ScenarioConfig cfg = table_defaults();
    const World full = simulate(cfg);
    std::size_t total = 0;
    for (const auto& b : full.batches) total += b.size();

    cfg.sparsity = 0.6;
    const World sparse = simulate(cfg);
    std::size_t kept = 0;
    for (const auto& b : sparse.batches) kept += b.size();
    CHECK(kept == static_cast<std::size_t>(std::llround(0.6 * static_cast<double>(total))));
}

TEST_CASE("noisy history perturbs exactly the designated share of pre-task cells") {
    ScenarioConfig cfg = table_defaults();
    const World clean = simulate(cfg);
    cfg.clean_fraction = 0.5;
    const World noisy = simulate(cfg);

    long long untouched = 0;
    long long total = 0;
    for (int slot = clean.truth.first_slot(); slot <= 0; ++slot) {
        for (int n = 1; n <= cfg.region_count(); ++n) {
            ++total;
            if (clean.truth.at(slot, n) == noisy.truth.at(slot, n)) ++untouched;
        }
    }
    CHECK(untouched == total - std::llround(0.5 * static_cast<double>(total)));
    // Task-slot truth is not a noisy-history target.
    for (int slot = 1; slot <= cfg.slot_count; ++slot) {
        CHECK(clean.truth.at(slot, 1) == noisy.truth.at(slot, 1));
    }
}

TEST_CASE("identical seeds give identical worlds, different seeds differ") {
    ScenarioConfig cfg = table_defaults();
    const World a = simulate(cfg);
    const World b = simulate(cfg);
    CHECK(batches_equal(a.batches, b.batches));
    cfg.seed += 1;
    const World c = simulate(cfg);
    CHECK_FALSE(batches_equal(a.batches, c.batches));
}

TEST_CASE("low-noise override shifts only the malicious mean") {
    ScenarioConfig cfg = table_defaults();
    cfg.low_noise_mu = 0.15;
    CHECK(cfg.effective_malicious_mean() == 0.15);
    const World world = simulate(cfg);
    std::vector<double> errors;
    for (const auto& batch : world.batches) {
        for (const auto& r : batch.reports()) {
            if (world.profiles[static_cast<std::size_t>(r.mu - 1)].malicious) {
                errors.push_back(r.value / world.truth.at(r.slot, r.region) - 1.0);
            }
        }
    }
    double mean = 0.0;
    for (double e : errors) mean += e;
    mean /= static_cast<double>(errors.size());
    CHECK(mean == doctest::Approx(0.15).epsilon(0.15));
}
