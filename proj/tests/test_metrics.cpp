#include <doctest.h>

#include <random>

#include "prbtd/metrics.hpp"

using namespace prbtd;

TEST_CASE("f1 treats malicious as the positive class") {
    // 10 malicious, all found, nothing else flagged.
    std::vector<bool> actual(100, false);
    for (int i = 0; i < 10; ++i) actual[static_cast<std::size_t>(i)] = true;
    CHECK(f1_score(actual, actual) == doctest::Approx(1.0));

    // 9 hits, 1 false alarm, 1 miss: precision = recall = 0.9.
    std::vector<bool> predicted(100, false);
    for (int i = 0; i < 9; ++i) predicted[static_cast<std::size_t>(i)] = true;
    predicted[50] = true;
    CHECK(f1_score(predicted, actual) == doctest::Approx(0.9));

    CHECK(f1_score(std::vector<bool>(100, false), actual) == 0.0);
}

TEST_CASE("f1 equals the brute-force confusion matrix on random instances") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng() % 40;
        std::vector<bool> predicted(n), actual(n);
        for (std::size_t i = 0; i < n; ++i) {
            predicted[i] = rng() % 2 == 0;
            actual[i] = rng() % 3 == 0;
        }
        double tp = 0, fp = 0, fn = 0;
        for (std::size_t i = 0; i < n; ++i) {
            tp += predicted[i] && actual[i];
            fp += predicted[i] && !actual[i];
            fn += !predicted[i] && actual[i];
        }
        double expected = 0.0;
        if (tp > 0) {
            const double p = tp / (tp + fp);
            const double r = tp / (tp + fn);
            expected = 2 * p * r / (p + r);
        }
        CHECK(f1_score(predicted, actual) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("reputation distance is the interclass mean gap") {
    const std::vector<bool> actual{false, false, true};
    CHECK(*reputation_distance({0.8, 0.8, 0.3}, actual) == doctest::Approx(0.5));
    CHECK(*reputation_distance({0.4, 0.4, 0.4}, actual) == doctest::Approx(0.0));
    CHECK_FALSE(reputation_distance({0.5, 0.5}, {false, false}).has_value());
    CHECK_FALSE(reputation_distance({0.5, 0.5}, {true, true}).has_value());
}

TEST_CASE("noise reduction ratio follows the kept-vs-original mean noise") {
    // Original mean noise 0.10, kept mean noise 0.019.
    const std::vector<double> noises{0.1, 0.181, 0.019};
    // mean(all three) = 0.1; kept = the last report only.
    CHECK(noise_reduction_ratio(noises, {false, false, true}).ratio ==
          doctest::Approx(0.81).epsilon(1e-12));

    CHECK(noise_reduction_ratio(noises, {true, true, true}).ratio == doctest::Approx(0.0));

    const auto removed_all = noise_reduction_ratio(noises, {false, false, false});
    CHECK(removed_all.ratio == 1.0);
    CHECK(removed_all.all_data_removed);

    CHECK(noise_reduction_ratio({0.0, 0.0}, {true, false}).ratio == 0.0);
}

TEST_CASE("report noise is relative and guards tiny truth") {
    CHECK(report_noise(130.0, 100.0) == doctest::Approx(0.3));
    CHECK(report_noise(100.0, 100.0) == 0.0);
    CHECK(report_noise(1.0, 0.0) == doctest::Approx(1e9));
}

TEST_CASE("dropping zero-noise reports never beats dropping the noisiest") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> uni(0.0, 0.5);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 4 + rng() % 4;
        std::vector<double> noises(n);
        for (auto& v : noises) v = rng() % 3 == 0 ? 0.0 : uni(rng);

        // kept set A: drop only the zero-noise reports
        std::vector<bool> keep_noisy(n);
        std::size_t kept_count = 0;
        for (std::size_t i = 0; i < n; ++i) {
            keep_noisy[i] = noises[i] > 0.0;
            kept_count += keep_noisy[i];
        }
        if (kept_count == 0 || kept_count == n) continue;
        const double ratio_a = noise_reduction_ratio(noises, keep_noisy).ratio;

        // best ratio over every kept set of the same size, by brute force
        double best = -1e9;
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            std::vector<bool> kept(n);
            std::size_t count = 0;
            for (std::size_t i = 0; i < n; ++i) {
                kept[i] = (mask >> i) & 1u;
                count += kept[i];
            }
            if (count != kept_count) continue;
            best = std::max(best, noise_reduction_ratio(noises, kept).ratio);
        }
        CHECK(ratio_a <= best + 1e-12);
    }
}

TEST_CASE("run metrics aggregate by plain means") {
    RunMetrics m;
    m.f1 = {1.0, 0.8};
    m.rep_distance = {0.4, 0.2};
    m.noise_reduction = {0.9, 0.7};
    CHECK(m.mean_f1() == doctest::Approx(0.9));
    CHECK(m.mean_rep_distance() == doctest::Approx(0.3));
    CHECK(m.mean_noise_reduction() == doctest::Approx(0.8));
}
