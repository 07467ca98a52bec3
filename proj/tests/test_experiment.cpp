#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "prbtd/experiment.hpp"
#include "prbtd/io.hpp"

using namespace prbtd;
namespace fs = std::filesystem;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.scenario.mu_count = 20;
    cfg.scenario.malicious_fraction = 0.1;
    cfg.scenario.submissions_per_mu = 10;
    cfg.scenario.slot_count = 40;
    cfg.scenario.grid_height = 2;
    cfg.scenario.grid_width = 3;
    cfg.scenario.seed = 5;
    cfg.repetitions = 2;
    return cfg;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

MeanVector mv(int slot, std::vector<std::optional<double>> means) {
    MeanVector m;
    m.slot = slot;
    m.means = std::move(means);
    return m;
}

}  // namespace

TEST_CASE("prediction chain: seasonal, then moving average, then latest mean") {
    MeanHistory history;
    history.emplace(-43, mv(-43, {10.0, std::nullopt, std::nullopt}));
    history.emplace(3, mv(3, {std::nullopt, 20.0, std::nullopt}));
    history.emplace(4, mv(4, {std::nullopt, 30.0, std::nullopt}));
    history.emplace(1, mv(1, {std::nullopt, std::nullopt, 7.0}));

    PredictorConfig cfg;  // seasonal_naive, S = 48, window 5
    const auto out = resolve_predictions(history, 5, 3, cfg, nullptr);
    CHECK(*out[0] == 10.0);                     // seasonal lookback hit
    CHECK(*out[1] == doctest::Approx(25.0));    // moving-average fallback
    CHECK(*out[2] == doctest::Approx(7.0));     // latest available mean
}

TEST_CASE("prediction chain leaves truly unseen regions absent") {
    MeanHistory history;
    PredictorConfig cfg;
    const auto out = resolve_predictions(history, 1, 2, cfg, nullptr);
    CHECK_FALSE(out[0].has_value());
    CHECK_FALSE(out[1].has_value());
}

TEST_CASE("method names round-trip") {
    CHECK(method_from_string("prbtd") == Method::prbtd);
    CHECK(to_string(Method::cnb) == "cnb");
    CHECK_THROWS_AS(method_from_string("bogus"), ConfigError);
}

TEST_CASE("run_method produces records, reputations and metrics") {
    ExperimentConfig cfg = small_config();
    const World world = simulate(cfg.scenario);
    std::vector<bool> actual(world.profiles.size());
    for (std::size_t i = 0; i < actual.size(); ++i) actual[i] = world.profiles[i].malicious;

    for (Method m : {Method::prbtd, Method::wei, Method::cnb, Method::td}) {
        const MethodRunResult result = run_method(world, m, cfg, actual);
        CHECK(result.iterations_per_slot.size() == 40);
        CHECK(result.reputation_history.size() == 41);
        CHECK(result.final_reputations.size() == 20);
        CHECK(result.metrics.noise.ratio <= 1.0);
        std::size_t reports = 0;
        for (const auto& b : world.batches) reports += b.size();
        CHECK(result.records.size() == reports);
    }
}

TEST_CASE("run_experiment is deterministic for a fixed seed list") {
    const ExperimentConfig cfg = small_config();
    const ExperimentResult a = run_experiment(cfg);
    const ExperimentResult b = run_experiment(cfg);
    REQUIRE(a.repetitions.size() == 2);
    CHECK(a.repetitions[0].seed == 5);
    CHECK(a.repetitions[1].seed == 6);
    for (const auto& [method, agg] : a.aggregates) {
        const auto& other = b.aggregates.at(method);
        CHECK(agg.f1 == other.f1);
        CHECK(agg.noise_reduction == other.noise_reduction);
    }
}

TEST_CASE("cmd_simulate writes deterministic data files") {
    const ExperimentConfig cfg = small_config();
    const fs::path dir_a = fs::temp_directory_path() / "prbtd_sim_a";
    const fs::path dir_b = fs::temp_directory_path() / "prbtd_sim_b";
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
    cmd_simulate(cfg, dir_a.string());
    cmd_simulate(cfg, dir_b.string());
    for (const char* name : {"truth.csv", "history.csv", "reports.csv", "profiles.csv",
                             "manifest.txt"}) {
        CAPTURE(name);
        REQUIRE(fs::exists(dir_a / name));
        CHECK(slurp(dir_a / name) == slurp(dir_b / name));
    }
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
}

TEST_CASE("cmd_run consumes simulate output from a data directory") {
    ExperimentConfig cfg = small_config();
    const fs::path data = fs::temp_directory_path() / "prbtd_data";
    const fs::path out = fs::temp_directory_path() / "prbtd_out";
    fs::remove_all(data);
    fs::remove_all(out);
    cmd_simulate(cfg, data.string());

    cfg.data_dir = data.string();
    cfg.methods = {Method::prbtd, Method::td};
    cmd_run(cfg, out.string());
    CHECK(fs::exists(out / "metrics.json"));
    CHECK(fs::exists(out / "comparison.csv"));
    CHECK(fs::exists(out / "rep0" / "records_prbtd.csv"));
    CHECK(fs::exists(out / "rep0" / "records_td.csv"));
    CHECK(fs::exists(out / "rep0" / "reputations_prbtd.csv"));

    const std::string table = slurp(out / "comparison.csv");
    CHECK(table.find("prbtd,") != std::string::npos);
    CHECK(table.find("td,") != std::string::npos);
    fs::remove_all(data);
    fs::remove_all(out);
}

TEST_CASE("cmd_run fails with missing inputs when data_dir is empty") {
    ExperimentConfig cfg = small_config();
    const fs::path data = fs::temp_directory_path() / "prbtd_missing";
    fs::remove_all(data);
    fs::create_directories(data);
    cfg.data_dir = data.string();
    CHECK_THROWS_AS(cmd_run(cfg, (data / "out").string()), MissingInputError);
    fs::remove_all(data);
}

TEST_CASE("cmd_sweep rejects unknown axes and writes one row per point") {
    ExperimentConfig cfg = small_config();
    cfg.repetitions = 1;
    cfg.methods = {Method::td};
    const fs::path out = fs::temp_directory_path() / "prbtd_sweep";
    fs::remove_all(out);
    CHECK_THROWS_AS(cmd_sweep(cfg, "bogus", out.string()), ConfigError);
    cmd_sweep(cfg, "mu", out.string());
    const std::string table = slurp(out / "sweep_mu.csv");
    CHECK(table.find("mu,0.3,td,") != std::string::npos);
    CHECK(table.find("mu,0.15,td,") != std::string::npos);
    fs::remove_all(out);
}
