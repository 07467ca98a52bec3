#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "prbtd/predictor.hpp"

using namespace prbtd;

namespace {

MeanVector mv(int slot, std::vector<std::optional<double>> means) {
    MeanVector m;
    m.slot = slot;
    m.means = std::move(means);
    return m;
}

}  // namespace

TEST_CASE("persistence carries the previous slot forward") {
    MeanHistory history;
    history.emplace(4, mv(4, {1.0, 2.0}));
    PredictorConfig cfg;
    cfg.kind = PredictorKind::persistence;
    const auto out = predict(history, 5, 2, cfg);
    CHECK(*out[0] == 1.0);
    CHECK(*out[1] == 2.0);
    const auto gap = predict(history, 6, 2, cfg);
    CHECK_FALSE(gap[0].has_value());
}

TEST_CASE("moving average uses the mean of the window") {
    MeanHistory history;
    history.emplace(4, mv(4, {1.0, 2.0}));
    history.emplace(5, mv(5, {3.0, 4.0}));
    PredictorConfig cfg;
    cfg.kind = PredictorKind::moving_average;
    cfg.window = 2;
    const auto out = predict(history, 6, 2, cfg);
    CHECK(*out[0] == doctest::Approx(2.0));
    CHECK(*out[1] == doctest::Approx(3.0));
}

TEST_CASE("moving average skips absent entries and matches brute force") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> uni(10.0, 100.0);
    MeanHistory history;
    for (int slot = 1; slot <= 30; ++slot) {
        std::vector<std::optional<double>> means(3);
        for (auto& m : means) {
            if (rng() % 3 != 0) m = uni(rng);
        }
        history.emplace(slot, mv(slot, std::move(means)));
    }
    PredictorConfig cfg;
    cfg.kind = PredictorKind::moving_average;
    cfg.window = 5;
    for (int target = 2; target <= 31; ++target) {
        const auto out = predict(history, target, 3, cfg);
        for (int n = 1; n <= 3; ++n) {
            double sum = 0.0;
            int count = 0;
            for (int s = target - 5; s <= target - 1; ++s) {
                auto it = history.find(s);
                if (it == history.end()) continue;
                if (auto m = it->second.means[static_cast<std::size_t>(n - 1)]) {
                    sum += *m;
                    ++count;
                }
            }
            if (count == 0) {
                CHECK_FALSE(out[static_cast<std::size_t>(n - 1)].has_value());
            } else {
                CHECK(*out[static_cast<std::size_t>(n - 1)] ==
                      doctest::Approx(sum / count).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("seasonal naive is an exact shift") {
    MeanHistory history;
    history.emplace(-43, mv(-43, {10.5, std::nullopt}));
    PredictorConfig cfg;
    cfg.kind = PredictorKind::seasonal_naive;
    cfg.seasonal_period = 48;
    const auto out = predict(history, 5, 2, cfg);
    CHECK(*out[0] == 10.5);  // bit-exact copy
    CHECK_FALSE(out[1].has_value());
}

TEST_CASE("latest_means scans back per region") {
    MeanHistory history;
    history.emplace(1, mv(1, {1.0, std::nullopt, 3.0}));
    history.emplace(2, mv(2, {std::nullopt, 5.0, std::nullopt}));
    const auto out = latest_means(history, 4, 3);
    CHECK(*out[0] == 1.0);
    CHECK(*out[1] == 5.0);
    CHECK(*out[2] == 3.0);
    const auto none = latest_means(MeanHistory{}, 4, 3);
    CHECK_FALSE(none[0].has_value());
}

TEST_CASE("oracle predictor is exact at zero noise and deterministic") {
    std::map<int, std::vector<double>> truth;
    truth[1] = {100.0, 200.0};
    truth[2] = {150.0, 250.0};
    const PredictionGrid exact = oracle_predict(truth, 0.0, 9);
    CHECK(*exact.at(1, 1) == 100.0);
    CHECK(*exact.at(2, 2) == 250.0);

    const PredictionGrid a = oracle_predict(truth, 0.05, 42);
    const PredictionGrid b = oracle_predict(truth, 0.05, 42);
    CHECK(*a.at(1, 1) == *b.at(1, 1));
    CHECK(*a.at(2, 2) == *b.at(2, 2));
    const PredictionGrid c = oracle_predict(truth, 0.05, 43);
    CHECK(*a.at(1, 1) != *c.at(1, 1));
}

TEST_CASE("oracle predictor noise has the configured spread") {
    std::map<int, std::vector<double>> truth;
    for (int slot = 1; slot <= 100; ++slot) {
        truth[slot] = std::vector<double>(100, 50.0);
    }
    const PredictionGrid grid = oracle_predict(truth, 0.05, 2024);
    std::vector<double> ratios;
    for (int slot = 1; slot <= 100; ++slot) {
        for (int n = 1; n <= 100; ++n) {
            ratios.push_back(*grid.at(slot, n) / 50.0 - 1.0);
        }
    }
    REQUIRE(ratios.size() == 10000);
    double mean = 0.0;
    for (double r : ratios) mean += r;
    mean /= static_cast<double>(ratios.size());
    double var = 0.0;
    for (double r : ratios) var += (r - mean) * (r - mean);
    var /= static_cast<double>(ratios.size() - 1);
    const double sd = std::sqrt(var);
    CHECK(sd > 0.045);
    CHECK(sd < 0.055);
}

TEST_CASE("external predictions load and report malformed rows") {
    const std::string path = "external_pred_test.csv";
    {
        std::ofstream out(path);
        out << "slot,region,ghat\n";
        out << "5,2,120.5\n";
        out << "6,1,80\n";
    }
    const PredictionGrid grid = load_external(path, 2);
    CHECK(*grid.at(5, 2) == doctest::Approx(120.5));
    CHECK(*grid.at(6, 1) == doctest::Approx(80.0));
    CHECK_FALSE(grid.at(5, 1).has_value());
    CHECK_FALSE(grid.at(7, 1).has_value());

    {
        std::ofstream out(path);
    }
    const PredictionGrid empty = load_external(path, 2);
    CHECK_FALSE(empty.at(1, 1).has_value());

    {
        std::ofstream out(path);
        out << "slot,region,ghat\n";
        out << "5,x,1\n";
    }
    CHECK_THROWS_WITH_AS(static_cast<void>(load_external(path, 2)),
                         doctest::Contains("line 2"), std::runtime_error);
    std::remove(path.c_str());
}

TEST_CASE("predictor config validation") {
    PredictorConfig cfg;
    cfg.window = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = PredictorConfig{};
    cfg.kind = PredictorKind::external;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    CHECK(predictor_kind_from_string("seasonal_naive") == PredictorKind::seasonal_naive);
    CHECK_THROWS_AS(predictor_kind_from_string("nope"), std::invalid_argument);
}
