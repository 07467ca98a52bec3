#include "prbtd/experiment.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "prbtd/io.hpp"

namespace prbtd {

namespace fs = std::filesystem;

Method method_from_string(const std::string& name) {
    if (name == "prbtd") return Method::prbtd;
    if (name == "wei") return Method::wei;
    if (name == "cnb") return Method::cnb;
    if (name == "td") return Method::td;
    throw ConfigError("unknown method: " + name);
}

std::string to_string(Method method) {
    switch (method) {
        case Method::prbtd: return "prbtd";
        case Method::wei: return "wei";
        case Method::cnb: return "cnb";
        case Method::td: return "td";
    }
    return "unknown";
}

void ExperimentConfig::validate() const {
    scenario.validate();
    td.validate();
    predictor.validate();
    if (methods.empty()) throw ConfigError("methods must not be empty");
    if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
    if (quality_map.lambda <= 0.0) throw ConfigError("distance_lambda must be > 0");
    if (td.cache_length < 1) throw ConfigError("cache_length must be >= 1");
}

namespace {

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("field " + key + ": expected integer, got `" + value + "`");
    }
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("field " + key + ": expected number, got `" + value + "`");
    }
}

std::uint64_t parse_seed(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("field " + key + ": expected unsigned integer, got `" + value + "`");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "1" || value == "true" || value == "on") return true;
    if (value == "0" || value == "false" || value == "off") return false;
    throw ConfigError("field " + key + ": expected boolean, got `" + value + "`");
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& text) {
    ExperimentConfig cfg;
    const auto kv = parse_key_values(text);
    for (const auto& [key, value] : kv) {
        if (key == "mu_count") cfg.scenario.mu_count = parse_int(key, value);
        else if (key == "malicious_fraction") cfg.scenario.malicious_fraction = parse_real(key, value);
        else if (key == "submissions_per_mu") cfg.scenario.submissions_per_mu = parse_int(key, value);
        else if (key == "slot_count") cfg.scenario.slot_count = parse_int(key, value);
        else if (key == "grid_height") cfg.scenario.grid_height = parse_int(key, value);
        else if (key == "grid_width") cfg.scenario.grid_width = parse_int(key, value);
        else if (key == "malicious_mean") cfg.scenario.malicious_mean = parse_real(key, value);
        else if (key == "malicious_stddev") cfg.scenario.malicious_stddev = parse_real(key, value);
        else if (key == "normal_noise") cfg.scenario.normal_noise = parse_real(key, value);
        else if (key == "seed") cfg.scenario.seed = parse_seed(key, value);
        else if (key == "history_len") cfg.scenario.history_len = parse_int(key, value);
        else if (key == "bursty") cfg.scenario.bursty = parse_bool(key, value);
        else if (key == "sparsity") cfg.scenario.sparsity = parse_real(key, value);
        else if (key == "clean_fraction") cfg.scenario.clean_fraction = parse_real(key, value);
        else if (key == "low_noise_mu") cfg.scenario.low_noise_mu = parse_real(key, value);
        else if (key == "alpha") cfg.td.alpha = parse_real(key, value);
        else if (key == "beta") cfg.td.beta = parse_real(key, value);
        else if (key == "gamma") cfg.td.gamma = parse_real(key, value);
        else if (key == "rho") cfg.td.rho = parse_real(key, value);
        else if (key == "cache_length") cfg.td.cache_length = parse_int(key, value);
        else if (key == "epsilon") cfg.td.epsilon = parse_real(key, value);
        else if (key == "max_iters") cfg.td.max_iters = parse_int(key, value);
        else if (key == "reputation_clamp") cfg.td.reputation_clamp = parse_real(key, value);
        else if (key == "value_tolerance") cfg.td.value_tolerance = parse_real(key, value);
        else if (key == "initial_reputation") cfg.td.initial_reputation = parse_real(key, value);
        else if (key == "predictor") {
            try {
                cfg.predictor.kind = predictor_kind_from_string(value);
            } catch (const std::exception& e) {
                throw ConfigError(std::string("field predictor: ") + e.what());
            }
        } else if (key == "predictor_window") cfg.predictor.window = parse_int(key, value);
        else if (key == "seasonal_period") cfg.predictor.seasonal_period = parse_int(key, value);
        else if (key == "oracle_noise") cfg.predictor.oracle_noise = parse_real(key, value);
        else if (key == "external_path") cfg.predictor.external_path = value;
        else if (key == "distance_lambda") cfg.quality_map.lambda = parse_real(key, value);
        else if (key == "methods") {
            cfg.methods.clear();
            std::istringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ',')) {
                if (!item.empty()) cfg.methods.push_back(method_from_string(item));
            }
        } else if (key == "repetitions") cfg.repetitions = parse_int(key, value);
        else if (key == "data_dir") cfg.data_dir = value;
        else throw ConfigError("unknown config field: " + key);
    }
    try {
        cfg.validate();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_experiment_config(ss.str());
}

std::string render_experiment_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "mu_count = " << cfg.scenario.mu_count << '\n';
    out << "malicious_fraction = " << format_double(cfg.scenario.malicious_fraction) << '\n';
    out << "submissions_per_mu = " << cfg.scenario.submissions_per_mu << '\n';
    out << "slot_count = " << cfg.scenario.slot_count << '\n';
    out << "grid_height = " << cfg.scenario.grid_height << '\n';
    out << "grid_width = " << cfg.scenario.grid_width << '\n';
    out << "malicious_mean = " << format_double(cfg.scenario.malicious_mean) << '\n';
    out << "malicious_stddev = " << format_double(cfg.scenario.malicious_stddev) << '\n';
    out << "normal_noise = " << format_double(cfg.scenario.normal_noise) << '\n';
    out << "seed = " << cfg.scenario.seed << '\n';
    out << "history_len = " << cfg.scenario.history_len << '\n';
    out << "bursty = " << (cfg.scenario.bursty ? "on" : "off") << '\n';
    if (cfg.scenario.sparsity) out << "sparsity = " << format_double(*cfg.scenario.sparsity) << '\n';
    if (cfg.scenario.clean_fraction) {
        out << "clean_fraction = " << format_double(*cfg.scenario.clean_fraction) << '\n';
    }
    if (cfg.scenario.low_noise_mu) {
        out << "low_noise_mu = " << format_double(*cfg.scenario.low_noise_mu) << '\n';
    }
    out << "alpha = " << format_double(cfg.td.alpha) << '\n';
    out << "beta = " << format_double(cfg.td.beta) << '\n';
    out << "gamma = " << format_double(cfg.td.gamma) << '\n';
    out << "rho = " << format_double(cfg.td.rho) << '\n';
    out << "cache_length = " << cfg.td.cache_length << '\n';
    out << "epsilon = " << format_double(cfg.td.epsilon) << '\n';
    out << "max_iters = " << cfg.td.max_iters << '\n';
    out << "reputation_clamp = " << format_double(cfg.td.reputation_clamp) << '\n';
    out << "value_tolerance = " << format_double(cfg.td.value_tolerance) << '\n';
    out << "initial_reputation = " << format_double(cfg.td.initial_reputation) << '\n';
    out << "predictor = " << to_string(cfg.predictor.kind) << '\n';
    out << "predictor_window = " << cfg.predictor.window << '\n';
    out << "seasonal_period = " << cfg.predictor.seasonal_period << '\n';
    out << "oracle_noise = " << format_double(cfg.predictor.oracle_noise) << '\n';
    if (!cfg.predictor.external_path.empty()) {
        out << "external_path = " << cfg.predictor.external_path << '\n';
    }
    out << "distance_lambda = " << format_double(cfg.quality_map.lambda) << '\n';
    out << "methods = ";
    for (std::size_t i = 0; i < cfg.methods.size(); ++i) {
        if (i > 0) out << ',';
        out << to_string(cfg.methods[i]);
    }
    out << '\n';
    out << "repetitions = " << cfg.repetitions << '\n';
    if (cfg.data_dir) out << "data_dir = " << *cfg.data_dir << '\n';
    return out.str();
}

std::vector<std::optional<double>> resolve_predictions(const MeanHistory& history, int slot,
                                                       int region_count,
                                                       const PredictorConfig& cfg,
                                                       const PredictionGrid* grid) {
    std::vector<std::optional<double>> out;
    if (cfg.kind == PredictorKind::oracle_noisy || cfg.kind == PredictorKind::external) {
        out = grid ? grid->row(slot)
                   : std::vector<std::optional<double>>(static_cast<std::size_t>(region_count),
                                                        std::nullopt);
    } else {
        out = predict(history, slot, region_count, cfg);
        if (cfg.kind == PredictorKind::seasonal_naive && !history.empty()) {
            // Deeper seasonal lags before giving up on seasonality: a gap at
            // t-S is usually covered by t-2S or t-3S (dense pre-task
            // history), which keeps the prediction phase-aligned instead of
            // lagged.
            const int first_slot = history.begin()->first;
            for (int lag = 2 * cfg.seasonal_period; slot - lag >= first_slot;
                 lag += cfg.seasonal_period) {
                bool any_absent = false;
                for (const auto& cell : out) any_absent = any_absent || !cell;
                if (!any_absent) break;
                PredictorConfig deeper = cfg;
                deeper.seasonal_period = lag;
                const auto shifted = predict(history, slot, region_count, deeper);
                for (int n = 1; n <= region_count; ++n) {
                    auto& cell = out[static_cast<std::size_t>(n - 1)];
                    if (!cell) cell = shifted[static_cast<std::size_t>(n - 1)];
                }
            }
            PredictorConfig ma = cfg;
            ma.kind = PredictorKind::moving_average;
            std::vector<std::optional<double>> fallback;
            for (int n = 1; n <= region_count; ++n) {
                auto& cell = out[static_cast<std::size_t>(n - 1)];
                if (cell) continue;
                if (fallback.empty()) fallback = predict(history, slot, region_count, ma);
                cell = fallback[static_cast<std::size_t>(n - 1)];
            }
        }
    }
    std::vector<std::optional<double>> last;
    for (int n = 1; n <= region_count; ++n) {
        auto& cell = out[static_cast<std::size_t>(n - 1)];
        if (cell) continue;
        if (last.empty()) last = latest_means(history, slot, region_count);
        cell = last[static_cast<std::size_t>(n - 1)];
    }
    return out;
}

namespace {

MeanHistory history_means(const World& world) {
    MeanHistory history;
    for (int slot = world.truth.first_slot(); slot <= 0; ++slot) {
        MeanVector mv;
        mv.slot = slot;
        mv.means.reserve(static_cast<std::size_t>(world.truth.region_count()));
        for (int n = 1; n <= world.truth.region_count(); ++n) {
            mv.means.push_back(world.truth.at(slot, n));
        }
        history.emplace(slot, std::move(mv));
    }
    return history;
}

std::map<int, std::vector<double>> truth_rows(const GroundTruthSeries& truth) {
    std::map<int, std::vector<double>> rows;
    for (int slot = 1; slot <= truth.task_slots(); ++slot) {
        std::vector<double> row;
        row.reserve(static_cast<std::size_t>(truth.region_count()));
        for (int n = 1; n <= truth.region_count(); ++n) row.push_back(truth.at(slot, n));
        rows.emplace(slot, std::move(row));
    }
    return rows;
}

}  // namespace

MethodRunResult run_method(const World& world, Method method, const ExperimentConfig& cfg,
                           const std::optional<std::vector<bool>>& actual_malicious) {
    const int regions = world.truth.region_count();
    const int mu_count = static_cast<int>(world.profiles.size());
    if (mu_count == 0) throw std::invalid_argument("run_method: world has no user profiles");

    MethodRunResult result;
    result.method = method;

    const bool needs_predictions = method == Method::prbtd || method == Method::cnb;
    PredictionGrid grid;
    const PredictionGrid* grid_ptr = nullptr;
    if (needs_predictions && cfg.predictor.kind == PredictorKind::oracle_noisy) {
        grid = oracle_predict(truth_rows(world.truth), cfg.predictor.oracle_noise,
                              cfg.scenario.seed ^ 0x0DAC1EULL);
        grid_ptr = &grid;
    } else if (needs_predictions && cfg.predictor.kind == PredictorKind::external) {
        grid = load_external(cfg.predictor.external_path, regions);
        grid_ptr = &grid;
    }

    std::optional<TdEngine> engine;
    std::optional<BaselineEngine> baseline;
    if (method == Method::prbtd) {
        engine.emplace(cfg.td, regions, mu_count);
    } else {
        BaselineConfig bc;
        bc.kind = method == Method::wei    ? BaselineKind::wei
                  : method == Method::cnb ? BaselineKind::cnb
                                          : BaselineKind::td;
        bc.quality_map = cfg.quality_map;
        bc.td = cfg.td;
        baseline.emplace(bc, regions, mu_count);
    }

    MeanHistory history = history_means(world);
    const std::vector<std::optional<double>> no_predictions(static_cast<std::size_t>(regions),
                                                            std::nullopt);

    double total_seconds = 0.0;
    for (const auto& batch : world.batches) {
        std::vector<std::optional<double>> predictions = no_predictions;
        if (needs_predictions) {
            predictions =
                resolve_predictions(history, batch.slot(), regions, cfg.predictor, grid_ptr);
        }

        const auto start = std::chrono::steady_clock::now();
        SlotResult slot_result = method == Method::prbtd ? engine->run_slot(batch, predictions)
                                                         : baseline->run_slot(batch, predictions);
        const auto stop = std::chrono::steady_clock::now();
        const double seconds = std::chrono::duration<double>(stop - start).count();
        total_seconds += seconds;
        result.max_slot_seconds = std::max(result.max_slot_seconds, seconds);

        result.iterations_per_slot.push_back(slot_result.iterations);
        result.converged_per_slot.push_back(slot_result.converged);
        if (!slot_result.converged) ++result.non_converged_slots;
        for (auto& rec : slot_result.records) result.records.push_back(rec);

        if (needs_predictions) {
            // The platform eliminates low-quality data at the end of each
            // slot, so the mean history the predictor consumes is built from
            // the kept reports only.
            SlotBatch kept_batch(batch.slot());
            for (const auto& rec : slot_result.records) {
                if (rec.kept) kept_batch.add({rec.mu, rec.slot, rec.region, rec.value});
            }
            history.emplace(batch.slot(), compute_means(kept_batch, regions));
        }
    }
    if (!world.batches.empty()) {
        result.mean_slot_seconds = total_seconds / static_cast<double>(world.batches.size());
    }

    const ReputationLedger& ledger = method == Method::prbtd ? engine->ledger()
                                                             : baseline->ledger();
    result.reputation_history = ledger.history();
    result.final_reputations = ledger.current();
    result.predicted_malicious = classify_malicious(result.final_reputations);

    std::vector<double> noises;
    std::vector<bool> kept;
    noises.reserve(result.records.size());
    kept.reserve(result.records.size());
    for (const auto& rec : result.records) {
        noises.push_back(report_noise(rec.value, world.truth.at(rec.slot, rec.region)));
        kept.push_back(rec.kept);
    }
    result.metrics.noise = noise_reduction_ratio(noises, kept);
    if (actual_malicious) {
        result.metrics.f1 = f1_score(result.predicted_malicious, *actual_malicious);
        if (auto d = reputation_distance(result.final_reputations, *actual_malicious)) {
            result.metrics.rep_distance = d;
        }
    } else {
        result.metrics.f1 = std::nan("");
    }
    return result;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentResult result;
    for (int rep = 0; rep < cfg.repetitions; ++rep) {
        ExperimentConfig rep_cfg = cfg;
        rep_cfg.scenario.seed = cfg.scenario.seed + static_cast<std::uint64_t>(rep);
        const World world = simulate(rep_cfg.scenario);

        std::vector<bool> actual(world.profiles.size());
        for (std::size_t i = 0; i < world.profiles.size(); ++i) {
            actual[i] = world.profiles[i].malicious;
        }

        RepetitionResult rep_result;
        rep_result.seed = rep_cfg.scenario.seed;
        for (Method m : cfg.methods) {
            rep_result.methods.push_back(run_method(world, m, rep_cfg, actual));
        }
        result.repetitions.push_back(std::move(rep_result));
    }
    for (Method m : cfg.methods) {
        RunMetrics agg;
        for (const auto& rep : result.repetitions) {
            for (const auto& mr : rep.methods) {
                if (mr.method != m) continue;
                agg.f1.push_back(mr.metrics.f1);
                agg.rep_distance.push_back(
                    mr.metrics.rep_distance ? *mr.metrics.rep_distance : std::nan(""));
                agg.noise_reduction.push_back(mr.metrics.noise.ratio);
            }
        }
        result.aggregates.emplace(m, std::move(agg));
    }
    return result;
}

namespace {

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory: " + dir);
}

void write_manifest(const ExperimentConfig& cfg, const std::string& out_dir) {
    std::ofstream out(out_dir + "/manifest.txt");
    if (!out) throw IoError("cannot write manifest in " + out_dir);
    out << render_experiment_config(cfg);
}

void write_metrics_files(const ExperimentResult& result, const ExperimentConfig& cfg,
                         const std::string& out_dir) {
    std::ofstream json(out_dir + "/metrics.json");
    if (!json) throw IoError("cannot write metrics.json in " + out_dir);
    json << "[\n";
    bool first = true;
    for (const auto& rep : result.repetitions) {
        for (const auto& mr : rep.methods) {
            if (!first) json << ",\n";
            first = false;
            json << "  {\"seed\": " << rep.seed << ", \"method\": \"" << to_string(mr.method)
                 << "\", \"f1\": " << format_double(mr.metrics.f1) << ", \"reputation_distance\": "
                 << format_double(mr.metrics.rep_distance ? *mr.metrics.rep_distance
                                                          : std::nan(""))
                 << ", \"noise_reduction_ratio\": " << format_double(mr.metrics.noise.ratio)
                 << ", \"non_converged_slots\": " << mr.non_converged_slots << "}";
        }
    }
    json << "\n]\n";

    std::ofstream table(out_dir + "/comparison.csv");
    if (!table) throw IoError("cannot write comparison.csv in " + out_dir);
    table << "method,f1,reputation_distance,noise_reduction_ratio\n";
    for (Method m : cfg.methods) {
        const auto& agg = result.aggregates.at(m);
        table << to_string(m) << ',' << format_double(agg.mean_f1()) << ','
              << format_double(agg.mean_rep_distance()) << ','
              << format_double(agg.mean_noise_reduction()) << '\n';
    }
}

}  // namespace

void cmd_simulate(const ExperimentConfig& cfg, const std::string& out_dir) {
    cfg.validate();
    ensure_dir(out_dir);
    const World world = simulate(cfg.scenario);
    write_truth(out_dir + "/truth.csv", world.truth);
    write_history(out_dir + "/history.csv", world.truth);
    write_reports(out_dir + "/reports.csv", world.batches);
    write_profiles(out_dir + "/profiles.csv", world.profiles);
    write_manifest(cfg, out_dir);
}

void cmd_run(const ExperimentConfig& cfg, const std::string& out_dir) {
    cfg.validate();
    ensure_dir(out_dir);
    write_manifest(cfg, out_dir);

    ExperimentResult result;
    if (cfg.data_dir) {
        const std::string dir = *cfg.data_dir;
        GroundTruthSeries truth = read_series(dir + "/truth.csv",
                                              fs::exists(dir + "/history.csv")
                                                  ? std::optional<std::string>(dir + "/history.csv")
                                                  : std::nullopt,
                                              cfg.scenario.region_count());
        World world{RegionGrid(cfg.scenario.grid_height, cfg.scenario.grid_width),
                    std::move(truth),
                    {},
                    read_reports(dir + "/reports.csv", cfg.scenario.slot_count),
                    {}};
        const auto labels = read_profiles(dir + "/profiles.csv", cfg.scenario.mu_count);
        world.profiles.resize(static_cast<std::size_t>(cfg.scenario.mu_count));
        for (int mu = 1; mu <= cfg.scenario.mu_count; ++mu) {
            auto& p = world.profiles[static_cast<std::size_t>(mu - 1)];
            p.id = mu;
            p.malicious = labels && (*labels)[static_cast<std::size_t>(mu - 1)];
        }
        RepetitionResult rep;
        rep.seed = cfg.scenario.seed;
        for (Method m : cfg.methods) rep.methods.push_back(run_method(world, m, cfg, labels));
        result.repetitions.push_back(std::move(rep));
        for (Method m : cfg.methods) {
            RunMetrics agg;
            for (const auto& mr : result.repetitions.front().methods) {
                if (mr.method != m) continue;
                agg.f1.push_back(mr.metrics.f1);
                agg.rep_distance.push_back(
                    mr.metrics.rep_distance ? *mr.metrics.rep_distance : std::nan(""));
                agg.noise_reduction.push_back(mr.metrics.noise.ratio);
            }
            result.aggregates.emplace(m, std::move(agg));
        }
    } else {
        result = run_experiment(cfg);
    }

    for (std::size_t r = 0; r < result.repetitions.size(); ++r) {
        const std::string rep_dir = out_dir + "/rep" + std::to_string(r);
        ensure_dir(rep_dir);
        for (const auto& mr : result.repetitions[r].methods) {
            const std::string name = to_string(mr.method);
            write_records(rep_dir + "/records_" + name + ".csv", mr.records,
                          mr.iterations_per_slot, mr.converged_per_slot,
                          mr.method == Method::prbtd ? std::nullopt
                                                     : std::optional<std::string>(name));
            write_reputations(rep_dir + "/reputations_" + name + ".csv", mr.reputation_history);
        }
    }
    write_metrics_files(result, cfg, out_dir);

    std::ofstream timing(out_dir + "/timing.log");
    if (timing) {
        for (std::size_t r = 0; r < result.repetitions.size(); ++r) {
            for (const auto& mr : result.repetitions[r].methods) {
                timing << "rep " << r << ' ' << to_string(mr.method) << " mean_slot_seconds "
                       << format_double(mr.mean_slot_seconds) << " max_slot_seconds "
                       << format_double(mr.max_slot_seconds) << '\n';
            }
        }
    }
}

void cmd_sweep(const ExperimentConfig& cfg, const std::string& axis, const std::string& out_dir) {
    cfg.validate();
    std::vector<double> values;
    if (axis == "sparsity") values = {1.0, 0.9, 0.8, 0.7, 0.6};
    else if (axis == "clean_fraction") values = {0.9, 0.8, 0.7, 0.6, 0.5};
    else if (axis == "mu") values = {0.3, 0.15};
    else if (axis == "bursty") values = {0.0, 1.0};
    else throw ConfigError("unknown sweep axis: " + axis);

    ensure_dir(out_dir);
    write_manifest(cfg, out_dir);
    std::ofstream out(out_dir + "/sweep_" + axis + ".csv");
    if (!out) throw IoError("cannot write sweep output in " + out_dir);
    out << "axis,value,method,f1,reputation_distance,noise_reduction_ratio\n";
    for (double value : values) {
        ExperimentConfig point = cfg;
        if (axis == "sparsity") {
            if (value < 1.0) point.scenario.sparsity = value;
        } else if (axis == "clean_fraction") {
            point.scenario.clean_fraction = value;
        } else if (axis == "mu") {
            point.scenario.malicious_mean = value;
        } else {
            point.scenario.bursty = value != 0.0;
        }
        const ExperimentResult result = run_experiment(point);
        for (Method m : point.methods) {
            const auto& agg = result.aggregates.at(m);
            out << axis << ',' << format_double(value) << ',' << to_string(m) << ','
                << format_double(agg.mean_f1()) << ',' << format_double(agg.mean_rep_distance())
                << ',' << format_double(agg.mean_noise_reduction()) << '\n';
        }
    }
}

}  // namespace prbtd
