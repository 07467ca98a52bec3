#include "prbtd/predictor.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace prbtd {

std::optional<double> PredictionGrid::at(int slot, int region) const {
    auto it = cells_.find(slot);
    if (it == cells_.end()) return std::nullopt;
    return it->second.at(static_cast<std::size_t>(region - 1));
}

void PredictionGrid::set(int slot, int region, double value) {
    auto& row = cells_[slot];
    if (row.empty()) row.assign(static_cast<std::size_t>(region_count_), std::nullopt);
    row.at(static_cast<std::size_t>(region - 1)) = value;
}

std::vector<std::optional<double>> PredictionGrid::row(int slot) const {
    auto it = cells_.find(slot);
    if (it != cells_.end()) return it->second;
    return std::vector<std::optional<double>>(static_cast<std::size_t>(region_count_), std::nullopt);
}

void PredictorConfig::validate() const {
    if (window < 1) throw std::invalid_argument("predictor window must be >= 1");
    if (seasonal_period < 1) throw std::invalid_argument("seasonal period must be >= 1");
    if (oracle_noise < 0.0) throw std::invalid_argument("oracle noise must be >= 0");
    if (kind == PredictorKind::external && external_path.empty()) {
        throw std::invalid_argument("external predictor requires a path");
    }
}

PredictorKind predictor_kind_from_string(const std::string& name) {
    if (name == "persistence") return PredictorKind::persistence;
    if (name == "moving_average") return PredictorKind::moving_average;
    if (name == "seasonal_naive") return PredictorKind::seasonal_naive;
    if (name == "oracle_noisy") return PredictorKind::oracle_noisy;
    if (name == "external") return PredictorKind::external;
    throw std::invalid_argument("unknown predictor kind: " + name);
}

std::string to_string(PredictorKind kind) {
    switch (kind) {
        case PredictorKind::persistence: return "persistence";
        case PredictorKind::moving_average: return "moving_average";
        case PredictorKind::seasonal_naive: return "seasonal_naive";
        case PredictorKind::oracle_noisy: return "oracle_noisy";
        case PredictorKind::external: return "external";
    }
    return "unknown";
}

namespace {

std::optional<double> mean_at(const MeanHistory& history, int slot, int region) {
    auto it = history.find(slot);
    if (it == history.end()) return std::nullopt;
    if (region < 1 || region > static_cast<int>(it->second.means.size())) return std::nullopt;
    return it->second.means[static_cast<std::size_t>(region - 1)];
}

}  // namespace

std::vector<std::optional<double>> predict(const MeanHistory& history, int target_slot,
                                           int region_count, const PredictorConfig& cfg) {
    std::vector<std::optional<double>> out(static_cast<std::size_t>(region_count), std::nullopt);
    switch (cfg.kind) {
        case PredictorKind::persistence: {
            for (int n = 1; n <= region_count; ++n) {
                out[static_cast<std::size_t>(n - 1)] = mean_at(history, target_slot - 1, n);
            }
            break;
        }
        case PredictorKind::moving_average: {
            for (int n = 1; n <= region_count; ++n) {
                double sum = 0.0;
                int count = 0;
                for (int s = target_slot - cfg.window; s <= target_slot - 1; ++s) {
                    if (auto m = mean_at(history, s, n)) {
                        sum += *m;
                        ++count;
                    }
                }
                if (count > 0) out[static_cast<std::size_t>(n - 1)] = sum / static_cast<double>(count);
            }
            break;
        }
        case PredictorKind::seasonal_naive: {
            for (int n = 1; n <= region_count; ++n) {
                out[static_cast<std::size_t>(n - 1)] = mean_at(history, target_slot - cfg.seasonal_period, n);
            }
            break;
        }
        case PredictorKind::oracle_noisy:
        case PredictorKind::external:
            throw std::logic_error("predict: grid-backed predictor kinds are resolved by the caller");
    }
    return out;
}

std::vector<std::optional<double>> latest_means(const MeanHistory& history, int target_slot,
                                                int region_count) {
    std::vector<std::optional<double>> out(static_cast<std::size_t>(region_count), std::nullopt);
    int remaining = region_count;
    for (auto it = history.lower_bound(target_slot); it != history.begin() && remaining > 0;) {
        --it;
        for (int n = 1; n <= region_count; ++n) {
            auto& cell = out[static_cast<std::size_t>(n - 1)];
            if (!cell) {
                if (auto m = mean_at(history, it->first, n)) {
                    cell = m;
                    --remaining;
                }
            }
        }
    }
    return out;
}

PredictionGrid oracle_predict(const std::map<int, std::vector<double>>& truth, double sigma,
                              std::uint64_t seed) {
    int region_count = 0;
    for (const auto& [slot, row] : truth) {
        region_count = std::max(region_count, static_cast<int>(row.size()));
    }
    PredictionGrid grid(region_count);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (const auto& [slot, row] : truth) {
        for (int n = 1; n <= static_cast<int>(row.size()); ++n) {
            const double g = row[static_cast<std::size_t>(n - 1)];
            const double eta = sigma == 0.0 ? 0.0 : sigma * noise(rng);
            grid.set(slot, n, g * (1.0 + eta));
        }
    }
    return grid;
}

PredictionGrid load_external(const std::string& path, int region_count) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open prediction file: " + path);
    PredictionGrid grid(region_count);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line_no == 1 && line.rfind("slot", 0) == 0) continue;  // header
        std::istringstream ss(line);
        std::string slot_s, region_s, value_s;
        if (!std::getline(ss, slot_s, ',') || !std::getline(ss, region_s, ',') ||
            !std::getline(ss, value_s)) {
            throw std::runtime_error("prediction file " + path + ": malformed row at line " +
                                     std::to_string(line_no));
        }
        try {
            const int slot = std::stoi(slot_s);
            const int region = std::stoi(region_s);
            const double value = std::stod(value_s);
            if (region < 1 || region > region_count || !std::isfinite(value)) {
                throw std::invalid_argument("out of range");
            }
            grid.set(slot, region, value);
        } catch (const std::exception&) {
            throw std::runtime_error("prediction file " + path + ": malformed row at line " +
                                     std::to_string(line_no));
        }
    }
    return grid;
}

}  // namespace prbtd
