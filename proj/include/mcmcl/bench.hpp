#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mcmcl/dataset.hpp"
#include "mcmcl/kernels.hpp"
#include "mcmcl/metrics.hpp"

namespace mcmcl {

// Canonical method keys accepted in configs and on the command line, with
// the display names used in report rows.
struct MethodInfo {
    const char* key;
    const char* display;
};

const std::vector<MethodInfo>& method_registry();
const MethodInfo* find_method(const std::string& key);

struct DatasetSpec {
    std::string name;

    // Either generated or loaded from files.
    bool swissroll = false;
    std::size_t swissroll_n = 723;
    double swissroll_gap = 0.05;
    double swissroll_height = 36.0;
    std::string data_path;
    std::string labels_path;

    int expected_clusters = 0;
    std::vector<std::string> methods;           // canonical keys
    std::vector<Metric> distances;
    std::vector<bool> log_normalizations;       // false = raw, true = log10(1 + x)
    std::uint64_t seed = 1;
};

struct BenchConfig {
    std::vector<DatasetSpec> datasets;
};

// Flat text config: one [name] section per dataset, key = value lines,
// '#' comments. Keys: type (files|swissroll), data, labels, clusters, n,
// gap, height, seed, methods, distances, normalizations (comma-separated
// lists).
BenchConfig parse_bench_config(const std::string& text);
BenchConfig load_bench_config(const std::string& path);

struct GridResult {
    std::string dataset;
    // Every (method, distance, normalization) cell, ordered by that key;
    // mean_rank holds the within-method rank used for best-cell selection.
    std::vector<EvaluationReport> cells;
    // One row per method: its best cell, re-ranked across methods and
    // sorted ascending by mean rank.
    std::vector<EvaluationReport> table;
};

// Runs one method on already-normalized data. The returned partition may be
// failure-flagged; invalid inputs throw.
Partition run_method(const DataMatrix& x, const std::string& method_key,
                     int clusters, Metric metric, std::uint64_t seed);

// Evaluates one cell; never throws. Search failures score accuracy 0 with
// ARI/NMI from the returned partition; exceptions become an error status.
EvaluationReport run_cell(const DataMatrix& x, const LabelVector& truth,
                          int expected_clusters, const std::string& method_key,
                          Metric metric, bool log_norm, std::uint64_t seed);

GridResult run_grid(const DatasetSpec& spec);

// Tab-separated table of the ranked best cells, one row per method.
std::string render_report(const GridResult& result);

// Cross-dataset summary: mean accuracy block, then mean rank block.
std::string render_summary(const std::vector<GridResult>& results);

}  // namespace mcmcl
