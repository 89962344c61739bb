#include "mcmcl/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "mcmcl/baselines.hpp"
#include "mcmcl/mcl.hpp"
#include "mcmcl/sparsity.hpp"

namespace mcmcl {

const std::vector<MethodInfo>& method_registry() {
    static const std::vector<MethodInfo> registry = {
        {"mc-mcl-orig", "MC-MCLo"}, {"mc-mcl-sqrt", "MC-MCLs"},
        {"mc-mcl-log", "MC-MCLl"},  {"mcl", "MCL"},
        {"ap", "AP"},               {"mc-ap", "MC-AP"},
        {"dbscan", "DBSCAN"},       {"kmeans", "K-means"},
    };
    return registry;
}

const MethodInfo* find_method(const std::string& key) {
    for (const auto& m : method_registry()) {
        if (key == m.key) return &m;
    }
    return nullptr;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t comma = s.find(',', start);
        if (comma == std::string::npos) comma = s.size();
        std::string item = trim(s.substr(start, comma - start));
        if (!item.empty()) out.push_back(item);
        start = comma + 1;
    }
    return out;
}

[[noreturn]] void config_error(std::size_t line, const std::string& what) {
    throw std::invalid_argument("config line " + std::to_string(line) + ": " + what);
}

long long parse_integer(const std::string& v, std::size_t line) {
    char* end = nullptr;
    long long x = std::strtoll(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0') config_error(line, "cannot parse integer '" + v + "'");
    return x;
}

double parse_real(const std::string& v, std::size_t line) {
    char* end = nullptr;
    double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0') config_error(line, "cannot parse number '" + v + "'");
    return x;
}

std::string sanitize_status(std::string s) {
    for (char& c : s) {
        if (c == '\t' || c == '\n' || c == '\r') c = ' ';
    }
    return s;
}

std::string num4(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string num2(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

bool cell_key_less(const EvaluationReport& a, const EvaluationReport& b) {
    return std::tie(a.method, a.distance, a.normalization) <
           std::tie(b.method, b.distance, b.normalization);
}

}  // namespace

BenchConfig parse_bench_config(const std::string& text) {
    BenchConfig config;
    DatasetSpec* current = nullptr;
    std::size_t line_no = 0;
    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') config_error(line_no, "unterminated section header");
            std::string name = trim(line.substr(1, line.size() - 2));
            if (name.empty()) config_error(line_no, "empty dataset name");
            config.datasets.emplace_back();
            config.datasets.back().name = name;
            current = &config.datasets.back();
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) config_error(line_no, "expected key = value");
        if (!current) config_error(line_no, "key outside a [dataset] section");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "type") {
            if (value == "swissroll") current->swissroll = true;
            else if (value == "files") current->swissroll = false;
            else config_error(line_no, "type must be files or swissroll");
        } else if (key == "data") {
            current->data_path = value;
        } else if (key == "labels") {
            current->labels_path = value;
        } else if (key == "clusters") {
            long long c = parse_integer(value, line_no);
            if (c < 1) config_error(line_no, "clusters must be positive");
            current->expected_clusters = static_cast<int>(c);
        } else if (key == "n") {
            long long n = parse_integer(value, line_no);
            if (n < 1) config_error(line_no, "n must be positive");
            current->swissroll_n = static_cast<std::size_t>(n);
        } else if (key == "gap") {
            current->swissroll_gap = parse_real(value, line_no);
        } else if (key == "height") {
            current->swissroll_height = parse_real(value, line_no);
        } else if (key == "seed") {
            long long s = parse_integer(value, line_no);
            if (s < 0) config_error(line_no, "seed must be nonnegative");
            current->seed = static_cast<std::uint64_t>(s);
        } else if (key == "methods") {
            for (const auto& item : split_list(value)) {
                if (item == "all") {
                    for (const auto& m : method_registry()) current->methods.push_back(m.key);
                } else if (find_method(item)) {
                    current->methods.push_back(item);
                } else {
                    config_error(line_no, "unknown method '" + item + "'");
                }
            }
        } else if (key == "distances") {
            for (const auto& item : split_list(value)) {
                if (item == "euclidean" || item == "eucl") {
                    current->distances.push_back(Metric::euclidean);
                } else if (item == "correlation" || item == "corr" || item == "pearson") {
                    current->distances.push_back(Metric::correlation);
                } else {
                    config_error(line_no, "unknown distance '" + item + "'");
                }
            }
        } else if (key == "normalizations") {
            for (const auto& item : split_list(value)) {
                if (item == "raw" || item == "-" || item == "none") {
                    current->log_normalizations.push_back(false);
                } else if (item == "log") {
                    current->log_normalizations.push_back(true);
                } else {
                    config_error(line_no, "unknown normalization '" + item + "'");
                }
            }
        } else {
            config_error(line_no, "unknown key '" + key + "'");
        }
    }
    if (config.datasets.empty()) {
        throw std::invalid_argument("config defines no datasets");
    }
    for (auto& ds : config.datasets) {
        if (ds.expected_clusters < 1) {
            throw std::invalid_argument("dataset '" + ds.name + "': clusters is required");
        }
        if (!ds.swissroll && (ds.data_path.empty() || ds.labels_path.empty())) {
            throw std::invalid_argument("dataset '" + ds.name + "': data and labels paths are required");
        }
        if (ds.methods.empty()) {
            for (const auto& m : method_registry()) ds.methods.push_back(m.key);
        }
        if (ds.distances.empty()) ds.distances.push_back(Metric::euclidean);
        if (ds.log_normalizations.empty()) ds.log_normalizations.push_back(false);
        std::sort(ds.methods.begin(), ds.methods.end());
        ds.methods.erase(std::unique(ds.methods.begin(), ds.methods.end()), ds.methods.end());
        std::sort(ds.distances.begin(), ds.distances.end(),
                  [](Metric a, Metric b) { return static_cast<int>(a) < static_cast<int>(b); });
        ds.distances.erase(std::unique(ds.distances.begin(), ds.distances.end()), ds.distances.end());
        std::sort(ds.log_normalizations.begin(), ds.log_normalizations.end());
        ds.log_normalizations.erase(
            std::unique(ds.log_normalizations.begin(), ds.log_normalizations.end()),
            ds.log_normalizations.end());
    }
    return config;
}

BenchConfig load_bench_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_bench_config(buf.str());
}

Partition run_method(const DataMatrix& x, const std::string& method_key,
                     int clusters, Metric metric, std::uint64_t seed) {
    if (!find_method(method_key)) throw std::invalid_argument("unknown method: " + method_key);
    auto distances = [&] {
        return metric == Metric::euclidean ? euclidean_distance_matrix(x)
                                           : correlation_distance_matrix(x);
    };
    if (method_key == "mc-mcl-orig") return mc_mcl(x, clusters, metric, Factor::original);
    if (method_key == "mc-mcl-sqrt") return mc_mcl(x, clusters, metric, Factor::sqrt);
    if (method_key == "mc-mcl-log") return mc_mcl(x, clusters, metric, Factor::log);
    if (method_key == "mcl") {
        auto d = distances();
        auto sim = metric == Metric::euclidean ? euclidean_similarity(d)
                                               : correlation_similarity(d);
        auto sparse = enforce_sparsity(sim);
        return mcl_target_clusters(sparse.network, clusters);
    }
    if (method_key == "ap") return ap_target_clusters(distances(), clusters);
    if (method_key == "mc-ap") return mc_ap(x, clusters, metric);
    if (method_key == "dbscan") return dbscan_target_clusters(distances(), clusters);
    return kmeans(x, clusters, metric, 100, seed);
}

EvaluationReport run_cell(const DataMatrix& x, const LabelVector& truth,
                          int expected_clusters, const std::string& method_key,
                          Metric metric, bool log_norm, std::uint64_t seed) {
    const MethodInfo* info = find_method(method_key);
    if (!info) throw std::invalid_argument("unknown method: " + method_key);
    EvaluationReport rep;
    rep.method = info->display;
    rep.distance = metric == Metric::euclidean ? "eucl" : "corr";
    rep.normalization = log_norm ? "log" : "-";
    try {
        DataMatrix input = log_norm ? log_normalize(x) : x;
        Partition p = run_method(input, method_key, expected_clusters, metric, seed);
        rep.acc = accuracy(truth, p, expected_clusters);
        rep.ari = adjusted_rand_index(truth, p.labels);
        rep.nmi = normalized_mutual_information(truth, p.labels);
        if (p.search_failed) {
            rep.status = p.note.empty() ? "failed" : "failed: " + sanitize_status(p.note);
        } else if (p.convergence_warning) {
            rep.status = "no-convergence";
        } else {
            rep.status = "ok";
        }
    } catch (const std::exception& e) {
        rep.acc = 0.0;
        rep.ari = 0.0;
        rep.nmi = 0.0;
        rep.status = "error: " + sanitize_status(e.what());
    }
    return rep;
}

GridResult run_grid(const DatasetSpec& spec) {
    if (spec.expected_clusters < 1) {
        throw std::invalid_argument("dataset '" + spec.name + "': clusters is required");
    }
    if (spec.methods.empty() || spec.distances.empty() || spec.log_normalizations.empty()) {
        throw std::invalid_argument("dataset '" + spec.name +
                                    "': methods, distances and normalizations must be non-empty");
    }
    DataMatrix x;
    LabelVector truth;
    if (spec.swissroll) {
        SwissRollSpec roll_spec;
        roll_spec.n_points = spec.swissroll_n;
        roll_spec.seed = spec.seed;
        roll_spec.gap_fraction = spec.swissroll_gap;
        roll_spec.height = spec.swissroll_height;
        auto roll = generate_tripartite_swiss_roll(roll_spec);
        x = std::move(roll.points);
        truth = std::move(roll.labels);
    } else {
        x = load_matrix(spec.data_path);
        truth = load_labels(spec.labels_path);
    }
    if (truth.size() != x.n()) {
        throw std::runtime_error("dataset '" + spec.name + "': " + std::to_string(x.n()) +
                                 " samples but " + std::to_string(truth.size()) + " labels");
    }
    for (const auto& key : spec.methods) {
        if (!find_method(key)) throw std::invalid_argument("unknown method: " + key);
    }

    GridResult out;
    out.dataset = spec.name;
    std::vector<EvaluationReport> bests;
    for (const auto& key : spec.methods) {
        std::vector<EvaluationReport> mine;
        for (Metric metric : spec.distances) {
            for (bool log_norm : spec.log_normalizations) {
                mine.push_back(run_cell(x, truth, spec.expected_clusters, key, metric,
                                        log_norm, spec.seed));
            }
        }
        if (mine.size() == 1) {
            mine.front().mean_rank = 1.0;
        } else {
            mine = mean_rank(std::move(mine));
        }
        // Best cell by within-method rank; ties prefer euclidean over
        // correlation, then raw over log.
        auto preference = [](const EvaluationReport& r) {
            return (r.distance == "eucl" ? 0 : 2) + (r.normalization == "-" ? 0 : 1);
        };
        const EvaluationReport* best = &mine.front();
        for (const auto& cell : mine) {
            if (cell.mean_rank < best->mean_rank ||
                (cell.mean_rank == best->mean_rank && preference(cell) < preference(*best))) {
                best = &cell;
            }
        }
        bests.push_back(*best);
        out.cells.insert(out.cells.end(), mine.begin(), mine.end());
    }
    std::sort(out.cells.begin(), out.cells.end(), cell_key_less);
    if (bests.size() == 1) {
        bests.front().mean_rank = 1.0;
        out.table = std::move(bests);
    } else {
        out.table = mean_rank(std::move(bests));
    }
    return out;
}

std::string render_report(const GridResult& result) {
    std::string out = "method\tdistance\tnorm\tacc\tari\tnmi\tmean_rank\tstatus\n";
    for (const auto& r : result.table) {
        out += r.method + '\t' + r.distance + '\t' + r.normalization + '\t' + num4(r.acc) +
               '\t' + num4(r.ari) + '\t' + num4(r.nmi) + '\t' + num2(r.mean_rank) + '\t' +
               r.status + '\n';
    }
    return out;
}

std::string render_summary(const std::vector<GridResult>& results) {
    if (results.empty()) return "";
    std::map<std::string, std::vector<const EvaluationReport*>> rows;
    for (std::size_t d = 0; d < results.size(); ++d) {
        for (const auto& r : results[d].table) {
            auto& cells = rows[r.method];
            cells.resize(results.size(), nullptr);
            cells[d] = &r;
        }
    }
    struct Line {
        std::string method;
        double mean = 0.0;
        std::vector<const EvaluationReport*> cells;
    };
    auto collect = [&](bool use_rank) {
        std::vector<Line> lines;
        for (auto& [method, cells] : rows) {
            Line line;
            line.method = method;
            line.cells = cells;
            line.cells.resize(results.size(), nullptr);
            double sum = 0.0;
            int present = 0;
            for (const auto* r : line.cells) {
                if (!r) continue;
                sum += use_rank ? r->mean_rank : r->acc;
                ++present;
            }
            line.mean = present > 0 ? sum / present : 0.0;
            lines.push_back(std::move(line));
        }
        return lines;
    };

    std::string out = "# mean accuracy across datasets\nmethod\tmean_acc";
    for (const auto& res : results) out += '\t' + res.dataset;
    out += '\n';
    auto acc_lines = collect(false);
    std::sort(acc_lines.begin(), acc_lines.end(), [](const Line& a, const Line& b) {
        if (a.mean != b.mean) return a.mean > b.mean;
        return a.method < b.method;
    });
    for (const auto& line : acc_lines) {
        out += line.method + '\t' + num4(line.mean);
        for (const auto* r : line.cells) out += '\t' + (r ? num4(r->acc) : std::string("-"));
        out += '\n';
    }

    out += "\n# mean rank across datasets\nmethod\tmean_rank";
    for (const auto& res : results) out += '\t' + res.dataset;
    out += '\n';
    auto rank_lines = collect(true);
    std::sort(rank_lines.begin(), rank_lines.end(), [](const Line& a, const Line& b) {
        if (a.mean != b.mean) return a.mean < b.mean;
        return a.method < b.method;
    });
    for (const auto& line : rank_lines) {
        out += line.method + '\t' + num2(line.mean);
        for (const auto* r : line.cells) out += '\t' + (r ? num2(r->mean_rank) : std::string("-"));
        out += '\n';
    }
    return out;
}

}  // namespace mcmcl
