#pragma once

#include <cstddef>
#include <vector>

#include "mcmcl/dataset.hpp"
#include "mcmcl/kernels.hpp"
#include "mcmcl/partition.hpp"
#include "mcmcl/sparsity.hpp"

namespace mcmcl {

// Column-stochastic flow matrix.
struct StochasticMatrix {
    Matrix p;

    std::size_t n() const { return p.rows(); }
};

struct MclSettings {
    double inflation = 2.0;
    int expansion_power = 2;
    int max_iterations = 200;
    double convergence_tol = 1e-9;   // max entry change between iterations
    double prune_floor = 1e-12;      // relative to the column maximum
    double attractor_tol = 1e-6;     // diagonal mass that marks an attractor
};

struct MclTrace {
    int iterations = 0;
    bool converged = false;
    double max_column_sum_error = 0.0;
    std::vector<double> column_sum_errors;  // one entry per expand/inflate step
};

// Sets each diagonal entry to the node's largest incident weight
// (isolated nodes get 1).
SimilarityNetwork add_self_loops(const SimilarityNetwork& w);

// Divides every column by its sum; zero columns are an error.
StochasticMatrix normalize_columns(const Matrix& m);

// Raises p to the given power by repeated multiplication.
StochasticMatrix expand(const StochasticMatrix& p, int power = 2);

// Entrywise power r, drops entries below prune_floor relative to the
// column maximum, then renormalizes each column.
StochasticMatrix inflate(const StochasticMatrix& p, double r, double prune_floor = 1e-12);

// Reads clusters off a converged flow matrix: rows with diagonal mass
// above attractor_tol attract; every node follows the attractor row
// holding its column maximum (ties to the lowest attractor index), and
// attractors sharing members collapse into one cluster.
Partition extract_clusters(const StochasticMatrix& steady, double attractor_tol = 1e-6);

// Alternates expansion and inflation until the matrix settles or the
// iteration cap is reached.
Partition mcl_iterate(const SimilarityNetwork& w, const MclSettings& settings,
                      MclTrace* trace = nullptr);

struct InflationSearchStats {
    int probes = 0;
    bool reached = false;
    double inflation = 0.0;  // winning inflation when reached
    int nearest_below = -1;  // closest cluster counts achieved around the target
    int nearest_above = -1;
};

// Hunts an inflation in [1.1, 20] whose cluster count hits the target,
// bisecting a 0.1-step grid and refining to 0.01 and 0.001 between the
// last bracketing values. Misses return the closest partition found,
// marked failed.
Partition mcl_target_clusters(const SimilarityNetwork& w, int target,
                              const MclSettings& base = {},
                              InflationSearchStats* stats = nullptr);

struct McMclInfo {
    double selected_threshold = 0.0;
    bool sparsity_warning = false;
    InflationSearchStats search;
};

// Full pipeline: distances, factor transform, spanning tree, tree path
// kernel, similarity inversion, sparsification, inflation search.
Partition mc_mcl(const DataMatrix& x, int target, Metric metric, Factor factor,
                 McMclInfo* info = nullptr);

}  // namespace mcmcl
