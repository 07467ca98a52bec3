#include "prbtd/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace prbtd {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) return "nan";
    return std::string(buf, ptr);
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MissingInputError("cannot open for reading: " + path);
    return in;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    return fields;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

void write_reports(const std::string& path, const std::vector<SlotBatch>& batches) {
    auto out = open_out(path);
    out << "mu,slot,region,value\n";
    for (const auto& batch : batches) {
        for (const auto& r : batch.reports()) {
            out << r.mu << ',' << r.slot << ',' << r.region << ',' << format_double(r.value)
                << '\n';
        }
    }
}

std::vector<SlotBatch> read_reports(const std::string& path, int slot_count) {
    auto in = open_in(path);
    std::vector<SlotBatch> batches;
    batches.reserve(static_cast<std::size_t>(slot_count));
    for (int slot = 1; slot <= slot_count; ++slot) batches.emplace_back(slot);

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty()) continue;
        if (line_no == 1 && line.rfind("mu", 0) == 0) continue;
        const auto fields = split_csv(line);
        if (fields.size() != 4) {
            throw IoError(path + ": malformed report at line " + std::to_string(line_no));
        }
        try {
            SensingReport r{std::stoi(fields[0]), std::stoi(fields[1]), std::stoi(fields[2]),
                            std::stod(fields[3])};
            if (r.slot < 1 || r.slot > slot_count) throw std::out_of_range("slot");
            batches[static_cast<std::size_t>(r.slot - 1)].add(r);
        } catch (const IoError&) {
            throw;
        } catch (const std::exception& e) {
            throw IoError(path + ": bad report at line " + std::to_string(line_no) + ": " +
                          e.what());
        }
    }
    return batches;
}

void write_truth(const std::string& path, const GroundTruthSeries& truth) {
    auto out = open_out(path);
    out << "slot,region,value\n";
    for (int slot = 1; slot <= truth.task_slots(); ++slot) {
        for (int n = 1; n <= truth.region_count(); ++n) {
            out << slot << ',' << n << ',' << format_double(truth.at(slot, n)) << '\n';
        }
    }
}

void write_history(const std::string& path, const GroundTruthSeries& truth) {
    auto out = open_out(path);
    out << "slot,region,value\n";
    for (int slot = truth.first_slot(); slot <= 0; ++slot) {
        for (int n = 1; n <= truth.region_count(); ++n) {
            out << slot << ',' << n << ',' << format_double(truth.at(slot, n)) << '\n';
        }
    }
}

GroundTruthSeries read_series(const std::string& truth_path,
                              const std::optional<std::string>& history_path, int region_count) {
    struct Cell {
        int slot;
        int region;
        double value;
    };
    std::vector<Cell> cells;
    int min_slot = 1;
    int max_slot = 0;
    auto load = [&](const std::string& path) {
        auto in = open_in(path);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            line = trim(line);
            if (line.empty()) continue;
            if (line_no == 1 && line.rfind("slot", 0) == 0) continue;
            const auto fields = split_csv(line);
            if (fields.size() != 3) {
                throw IoError(path + ": malformed row at line " + std::to_string(line_no));
            }
            try {
                Cell c{std::stoi(fields[0]), std::stoi(fields[1]), std::stod(fields[2])};
                if (c.region < 1 || c.region > region_count) throw std::out_of_range("region");
                cells.push_back(c);
                min_slot = std::min(min_slot, c.slot);
                max_slot = std::max(max_slot, c.slot);
            } catch (const IoError&) {
                throw;
            } catch (const std::exception& e) {
                throw IoError(path + ": bad row at line " + std::to_string(line_no) + ": " +
                              e.what());
            }
        }
    };
    load(truth_path);
    if (history_path) load(*history_path);
    if (max_slot < 1) throw MissingInputError(truth_path + ": no task slots found");
    GroundTruthSeries series(max_slot, region_count, 1 - min_slot);
    for (const auto& c : cells) series.set(c.slot, c.region, c.value);
    return series;
}

void write_profiles(const std::string& path, const std::vector<MuProfile>& profiles) {
    auto out = open_out(path);
    out << "mu,malicious\n";
    for (const auto& p : profiles) out << p.id << ',' << (p.malicious ? 1 : 0) << '\n';
}

std::optional<std::vector<bool>> read_profiles(const std::string& path, int mu_count) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::vector<bool> malicious(static_cast<std::size_t>(mu_count), false);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty()) continue;
        if (line_no == 1 && line.rfind("mu", 0) == 0) continue;
        const auto fields = split_csv(line);
        if (fields.size() != 2) {
            throw IoError(path + ": malformed row at line " + std::to_string(line_no));
        }
        const int mu = std::stoi(fields[0]);
        if (mu < 1 || mu > mu_count) {
            throw IoError(path + ": mu out of range at line " + std::to_string(line_no));
        }
        malicious[static_cast<std::size_t>(mu - 1)] = fields[1] == "1";
    }
    return malicious;
}

void write_records(const std::string& path, const std::vector<QualityRecord>& records,
                   const std::vector<int>& iterations_per_slot,
                   const std::vector<bool>& converged_per_slot,
                   const std::optional<std::string>& method) {
    auto out = open_out(path);
    if (method) out << "method,";
    out << "slot,mu,region,value,q,kept,iterations,converged\n";
    for (const auto& rec : records) {
        const auto slot_idx = static_cast<std::size_t>(rec.slot - 1);
        if (method) out << *method << ',';
        out << rec.slot << ',' << rec.mu << ',' << rec.region << ',' << format_double(rec.value)
            << ',' << format_double(rec.quality) << ',' << (rec.kept ? 1 : 0) << ','
            << iterations_per_slot.at(slot_idx) << ',' << (converged_per_slot.at(slot_idx) ? 1 : 0)
            << '\n';
    }
}

void write_reputations(const std::string& path,
                       const std::vector<std::vector<double>>& history) {
    auto out = open_out(path);
    out << "slot,mu,reputation\n";
    for (std::size_t slot = 0; slot < history.size(); ++slot) {
        for (std::size_t mu = 0; mu < history[slot].size(); ++mu) {
            out << slot << ',' << (mu + 1) << ',' << format_double(history[slot][mu]) << '\n';
        }
    }
}

std::map<std::string, std::string> parse_key_values(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream ss(text);
    std::string line;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected `key = value`");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key or value");
        }
        out[key] = value;
    }
    return out;
}

}  // namespace prbtd
