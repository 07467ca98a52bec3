#include "prbtd/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace prbtd {

namespace {

// Truth generator shape. Amplitude and period follow the daily rhythm the
// default predictor expects; the noise terms set how predictable the series
// is and were fixed by the sweep in tools/tune notes.
constexpr double kBaseScale = 120.0;     // mean region base level (task units)
constexpr double kBaseSigma = 0.35;      // log-spread of base levels before smoothing
constexpr int kSmoothPasses = 3;         // neighbor-averaging passes for spatial fields
constexpr double kPhaseBase = 2.356;       // puts the steep seasonal rise mid-task
constexpr double kPhaseSigma = 0.15;     // per-region phase jitter (radians)     // per-region phase jitter (radians)
constexpr double kSeasonalAmp = 0.4;
constexpr int kSeasonalPeriod = 48;
constexpr double kNoiseSigma = 0.01;     // relative stddev of the smooth noise
constexpr double kNoiseRho = 0.92;       // AR(1) coefficient of the noise
constexpr double kGlobalNoiseShare = 0.6;  // share of noise common to all regions
constexpr double kPositiveFloor = 0.05;  // min value as a fraction of the base

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t purpose) {
    return std::mt19937_64(splitmix64(seed * 0x9e3779b97f4a7c15ULL + purpose));
}

// Smoothed unit-variance Gaussian field over the grid; neighboring regions
// end up strongly correlated.
std::vector<double> smooth_field(const RegionGrid& grid, std::mt19937_64& rng) {
    const int n = grid.region_count();
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> field(static_cast<std::size_t>(n));
    for (auto& v : field) v = gauss(rng);

    std::vector<double> next(field.size());
    for (int pass = 0; pass < kSmoothPasses; ++pass) {
        for (int region = 1; region <= n; ++region) {
            auto [row, col] = grid.coords(region);
            double sum = field[static_cast<std::size_t>(region - 1)];
            int count = 1;
            const int dr[] = {-1, 1, 0, 0};
            const int dc[] = {0, 0, -1, 1};
            for (int k = 0; k < 4; ++k) {
                const int r2 = row + dr[k];
                const int c2 = col + dc[k];
                if (r2 >= 1 && r2 <= grid.height() && c2 >= 1 && c2 <= grid.width()) {
                    sum += field[static_cast<std::size_t>(grid.index(r2, c2) - 1)];
                    ++count;
                }
            }
            next[static_cast<std::size_t>(region - 1)] = sum / static_cast<double>(count);
        }
        field.swap(next);
    }

    double mean = std::accumulate(field.begin(), field.end(), 0.0) / static_cast<double>(n);
    double var = 0.0;
    for (double v : field) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n);
    const double scale = var > 0.0 ? 1.0 / std::sqrt(var) : 1.0;
    for (auto& v : field) v = (v - mean) * scale;
    return field;
}

// Caps the base ratio of adjacent regions at 1.2 by pulling offending pairs
// toward their geometric mean (in log space the fields stay smooth).
void cap_neighbor_ratio(const RegionGrid& grid, std::vector<double>& log_base) {
    const double max_gap = std::log(1.2);
    for (int pass = 0; pass < 64; ++pass) {
        bool changed = false;
        for (int region = 1; region <= grid.region_count(); ++region) {
            auto [row, col] = grid.coords(region);
            const int dr[] = {0, 1};
            const int dc[] = {1, 0};
            for (int k = 0; k < 2; ++k) {
                const int r2 = row + dr[k];
                const int c2 = col + dc[k];
                if (r2 > grid.height() || c2 > grid.width()) continue;
                const int other = grid.index(r2, c2);
                double& a = log_base[static_cast<std::size_t>(region - 1)];
                double& b = log_base[static_cast<std::size_t>(other - 1)];
                const double gap = a - b;
                if (std::abs(gap) > max_gap) {
                    const double excess = (std::abs(gap) - max_gap) / 2.0;
                    const double sign = gap > 0.0 ? 1.0 : -1.0;
                    a -= sign * excess;
                    b += sign * excess;
                    changed = true;
                }
            }
        }
        if (!changed) break;
    }
}

}  // namespace

void ScenarioConfig::validate() const {
    if (mu_count < 1) throw std::invalid_argument("mu_count must be >= 1");
    if (!(malicious_fraction >= 0.0 && malicious_fraction < 0.5)) {
        throw std::invalid_argument("malicious_fraction must be in [0, 0.5)");
    }
    if (!(submissions_per_mu > 0 && submissions_per_mu < slot_count)) {
        throw std::invalid_argument("submissions_per_mu must satisfy 0 < k < T");
    }
    if (slot_count < 1) throw std::invalid_argument("slot_count must be >= 1");
    if (grid_height < 1 || grid_width < 1) throw std::invalid_argument("grid dims must be >= 1");
    if (malicious_mean < 0.0 || malicious_stddev < 0.0) {
        throw std::invalid_argument("malicious error parameters must be >= 0");
    }
    if (normal_noise < 0.0) throw std::invalid_argument("normal_noise must be >= 0");
    if (history_len < 0) throw std::invalid_argument("history_len must be >= 0");
    if (sparsity && !(*sparsity > 0.0 && *sparsity <= 1.0)) {
        throw std::invalid_argument("sparsity must be in (0, 1]");
    }
    if (clean_fraction && !(*clean_fraction >= 0.0 && *clean_fraction <= 1.0)) {
        throw std::invalid_argument("clean_fraction must be in [0, 1]");
    }
    if (low_noise_mu && *low_noise_mu < 0.0) {
        throw std::invalid_argument("low_noise_mu must be >= 0");
    }
    if (bursty) {
        const long long cells = static_cast<long long>(bursty_sets) * bursty_slot_len *
                                bursty_region_span;
        if (bursty_sets < 1 || bursty_slot_len < 1 || bursty_region_span < 1 ||
            bursty_slot_len > slot_count || bursty_region_span > region_count() ||
            cells > static_cast<long long>(slot_count) * region_count()) {
            throw std::invalid_argument("bursty windows do not fit the task");
        }
    }
}

GroundTruthSeries generate_truth(int task_slots, int region_count, std::uint64_t seed,
                                 int history_len) {
    if (task_slots < 1 || region_count < 1 || history_len < 0) {
        throw std::invalid_argument("generate_truth: bad dimensions");
    }
    // The spatial fields assume a grid; pick the most square factorization.
    int height = 1;
    for (int h = 1; h * h <= region_count; ++h) {
        if (region_count % h == 0) height = h;
    }
    const RegionGrid grid(height, region_count / height);

    auto rng = stream(seed, 0xA11CE);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<double> log_base = smooth_field(grid, rng);
    for (auto& v : log_base) v *= kBaseSigma;
    cap_neighbor_ratio(grid, log_base);

    std::vector<double> phase = smooth_field(grid, rng);
    for (auto& v : phase) v = kPhaseBase + v * kPhaseSigma;

    GroundTruthSeries series(task_slots, region_count, history_len);
    const int first = series.first_slot();

    // AR(1) noise: one city-wide component plus one per region.
    const double innov = std::sqrt(1.0 - kNoiseRho * kNoiseRho);
    double global_noise = gauss(rng);
    std::vector<double> region_noise(static_cast<std::size_t>(region_count));
    for (auto& v : region_noise) v = gauss(rng);

    for (int slot = first; slot <= task_slots; ++slot) {
        if (slot != first) {
            global_noise = kNoiseRho * global_noise + innov * gauss(rng);
            for (auto& v : region_noise) v = kNoiseRho * v + innov * gauss(rng);
        }
        for (int n = 1; n <= region_count; ++n) {
            const double base = kBaseScale * std::exp(log_base[static_cast<std::size_t>(n - 1)]);
            const double season =
                kSeasonalAmp *
                std::sin(2.0 * M_PI * static_cast<double>(slot) / kSeasonalPeriod +
                         phase[static_cast<std::size_t>(n - 1)]);
            const double noise = kNoiseSigma * (kGlobalNoiseShare * global_noise +
                                                (1.0 - kGlobalNoiseShare) *
                                                    region_noise[static_cast<std::size_t>(n - 1)]);
            const double value = base * (1.0 + season + noise);
            series.set(slot, n, std::max(value, kPositiveFloor * base));
        }
    }
    return series;
}

std::vector<MuProfile> build_population(const ScenarioConfig& cfg) {
    cfg.validate();
    auto rng = stream(cfg.seed, 0xB0B);

    const int malicious_count =
        static_cast<int>(std::floor(cfg.mu_count * cfg.malicious_fraction));
    std::vector<int> ids(static_cast<std::size_t>(cfg.mu_count));
    std::iota(ids.begin(), ids.end(), 1);
    std::shuffle(ids.begin(), ids.end(), rng);
    std::vector<bool> malicious(static_cast<std::size_t>(cfg.mu_count) + 1, false);
    for (int i = 0; i < malicious_count; ++i) malicious[static_cast<std::size_t>(ids[i])] = true;

    std::vector<MuProfile> profiles;
    profiles.reserve(static_cast<std::size_t>(cfg.mu_count));
    std::vector<int> slots(static_cast<std::size_t>(cfg.slot_count));
    std::uniform_int_distribution<int> region_pick(1, cfg.region_count());
    for (int mu = 1; mu <= cfg.mu_count; ++mu) {
        MuProfile p;
        p.id = mu;
        p.malicious = malicious[static_cast<std::size_t>(mu)];
        std::iota(slots.begin(), slots.end(), 1);
        // Partial Fisher-Yates: the first k entries become the schedule.
        for (int i = 0; i < cfg.submissions_per_mu; ++i) {
            std::uniform_int_distribution<int> pick(i, cfg.slot_count - 1);
            std::swap(slots[static_cast<std::size_t>(i)], slots[static_cast<std::size_t>(pick(rng))]);
        }
        std::vector<int> chosen(slots.begin(), slots.begin() + cfg.submissions_per_mu);
        std::sort(chosen.begin(), chosen.end());
        p.schedule.reserve(chosen.size());
        for (int s : chosen) p.schedule.emplace_back(s, region_pick(rng));
        profiles.push_back(std::move(p));
    }
    return profiles;
}

std::vector<SlotBatch> emit_reports(const GroundTruthSeries& truth,
                                    const std::vector<MuProfile>& profiles,
                                    const ScenarioConfig& cfg) {
    auto rng = stream(cfg.seed, 0xE417);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double mean = cfg.effective_malicious_mean();

    // (mu, region) per slot, in mu order.
    std::vector<std::vector<std::pair<int, int>>> per_slot(
        static_cast<std::size_t>(cfg.slot_count) + 1);
    for (const auto& p : profiles) {
        for (auto [slot, region] : p.schedule) {
            per_slot[static_cast<std::size_t>(slot)].emplace_back(p.id, region);
        }
    }

    std::vector<SlotBatch> batches;
    batches.reserve(static_cast<std::size_t>(cfg.slot_count));
    for (int slot = 1; slot <= cfg.slot_count; ++slot) {
        SlotBatch batch(slot);
        auto& assignments = per_slot[static_cast<std::size_t>(slot)];
        std::sort(assignments.begin(), assignments.end());
        for (auto [mu, region] : assignments) {
            const double g = truth.at(slot, region);
            const bool is_malicious = profiles[static_cast<std::size_t>(mu - 1)].malicious;
            double value;
            if (is_malicious) {
                value = g * (1.0 + mean + cfg.malicious_stddev * gauss(rng));
            } else if (cfg.normal_noise > 0.0) {
                value = g * (1.0 + cfg.normal_noise * gauss(rng));
            } else {
                value = g;
            }
            batch.add({mu, slot, region, value});
        }
        batches.push_back(std::move(batch));
    }
    return batches;
}

void inject_scenarios(GroundTruthSeries& truth, std::vector<SlotBatch>& batches,
                      std::vector<BurstyWindow>& windows, const ScenarioConfig& cfg) {
    windows.clear();
    if (cfg.bursty) {
        auto rng = stream(cfg.seed, 0xB57);
        std::uniform_int_distribution<int> slot_pick(1, cfg.slot_count - cfg.bursty_slot_len + 1);
        std::uniform_int_distribution<int> region_pick(1,
                                                       cfg.region_count() - cfg.bursty_region_span + 1);
        while (static_cast<int>(windows.size()) < cfg.bursty_sets) {
            BurstyWindow w{slot_pick(rng), cfg.bursty_slot_len, region_pick(rng),
                           cfg.bursty_region_span};
            bool overlaps = false;
            for (const auto& other : windows) {
                const bool slot_overlap = w.start_slot < other.start_slot + other.slot_len &&
                                          other.start_slot < w.start_slot + w.slot_len;
                const bool region_overlap =
                    w.start_region < other.start_region + other.region_span &&
                    other.start_region < w.start_region + w.region_span;
                if (slot_overlap && region_overlap) {
                    overlaps = true;
                    break;
                }
            }
            if (!overlaps) windows.push_back(w);
        }
        for (const auto& w : windows) {
            for (int slot = w.start_slot; slot < w.start_slot + w.slot_len; ++slot) {
                for (int region = w.start_region; region < w.start_region + w.region_span;
                     ++region) {
                    truth.set(slot, region, truth.at(slot, region) * cfg.bursty_scale);
                }
            }
        }
        // Reports sensed inside a window scale with the truth they measured.
        for (auto& batch : batches) {
            SlotBatch scaled(batch.slot());
            for (const auto& r : batch.reports()) {
                SensingReport copy = r;
                for (const auto& w : windows) {
                    if (w.covers(r.slot, r.region)) {
                        copy.value *= cfg.bursty_scale;
                        break;
                    }
                }
                scaled.add(copy);
            }
            batch = std::move(scaled);
        }
    }

    if (cfg.sparsity && *cfg.sparsity < 1.0) {
        auto rng = stream(cfg.seed, 0x5BA7);
        std::vector<std::pair<int, int>> refs;  // (slot index, report index)
        for (std::size_t b = 0; b < batches.size(); ++b) {
            for (std::size_t r = 0; r < batches[b].reports().size(); ++r) {
                refs.emplace_back(static_cast<int>(b), static_cast<int>(r));
            }
        }
        std::shuffle(refs.begin(), refs.end(), rng);
        const auto keep_count = static_cast<std::size_t>(
            std::llround(*cfg.sparsity * static_cast<double>(refs.size())));
        refs.resize(keep_count);
        std::vector<std::vector<bool>> keep(batches.size());
        for (std::size_t b = 0; b < batches.size(); ++b) {
            keep[b].assign(batches[b].reports().size(), false);
        }
        for (auto [b, r] : refs) keep[static_cast<std::size_t>(b)][static_cast<std::size_t>(r)] = true;
        for (std::size_t b = 0; b < batches.size(); ++b) {
            SlotBatch kept(batches[b].slot());
            const auto& reports = batches[b].reports();
            for (std::size_t r = 0; r < reports.size(); ++r) {
                if (keep[b][r]) kept.add(reports[r]);
            }
            batches[b] = std::move(kept);
        }
    }

    if (cfg.clean_fraction && *cfg.clean_fraction < 1.0) {
        auto rng = stream(cfg.seed, 0x41570);
        std::normal_distribution<double> xi(0.0, 0.1);
        std::vector<std::pair<int, int>> cells;  // (slot <= 0, region)
        for (int slot = truth.first_slot(); slot <= 0; ++slot) {
            for (int n = 1; n <= truth.region_count(); ++n) cells.emplace_back(slot, n);
        }
        std::shuffle(cells.begin(), cells.end(), rng);
        const auto noisy_count = static_cast<std::size_t>(std::llround(
            (1.0 - *cfg.clean_fraction) * static_cast<double>(cells.size())));
        for (std::size_t i = 0; i < noisy_count; ++i) {
            auto [slot, region] = cells[i];
            truth.set(slot, region, truth.at(slot, region) * (1.0 + xi(rng)));
        }
    }
}

World simulate(const ScenarioConfig& cfg) {
    cfg.validate();
    World world{RegionGrid(cfg.grid_height, cfg.grid_width),
                generate_truth(cfg.slot_count, cfg.region_count(), cfg.seed, cfg.history_len),
                build_population(cfg),
                {},
                {}};
    world.batches = emit_reports(world.truth, world.profiles, cfg);
    inject_scenarios(world.truth, world.batches, world.bursty_windows, cfg);
    return world;
}

}  // namespace prbtd
