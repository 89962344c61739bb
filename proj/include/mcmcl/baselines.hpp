#pragma once

#include <cstdint>
#include <vector>

#include "mcmcl/dataset.hpp"
#include "mcmcl/kernels.hpp"
#include "mcmcl/partition.hpp"

namespace mcmcl {

struct KmeansTrace {
    std::vector<double> objective_per_iteration;  // best restart's trajectory
    int best_restart = -1;
};

// Lloyd iterations with coordinate-mean centroids; the assignment step can
// use Euclidean or correlation distance. Restarts draw distinct initial
// centers from a per-restart seed stream; the best restart by within-cluster
// squared distance wins, ties to the lowest restart index.
Partition kmeans(const DataMatrix& x, int k, Metric metric = Metric::euclidean,
                 int restarts = 100, std::uint64_t seed = 1, KmeansTrace* trace = nullptr);

// Classic density clustering over a precomputed distance matrix. The
// eps-ball is closed and includes the point itself; unreached points keep
// the noise label 0.
Partition dbscan(const DistanceMatrix& d, double eps, std::size_t min_pts);

struct DbscanSearchStats {
    int probes = 0;
    bool reached = false;
    std::size_t min_pts = 0;
    double eps = 0.0;
};

// Scans min_pts upward, bisecting eps inside [min positive distance,
// max distance] (at most 60 steps each), until some setting yields exactly
// c clusters with no noise. Misses return the closest partition, flagged.
Partition dbscan_target_clusters(const DistanceMatrix& d, int c,
                                 DbscanSearchStats* stats = nullptr);

struct ApSettings {
    double damping = 0.9;
    int max_iterations = 1000;
    int stable_window = 50;  // iterations the exemplar set must hold still
};

// Frey-Dueck message passing on s(i,j) = -d(i,j) with the given shared
// preference on the diagonal.
Partition affinity_propagation(const DistanceMatrix& d, double preference,
                               const ApSettings& settings = {});

struct ApSearchStats {
    int probes = 0;
    bool reached = false;
    double preference = 0.0;
};

// Bisects the preference between min(-d) and the largest off-diagonal
// similarity, at most 60 probes, steering by cluster count. Always returns
// the closest partition found; flagged when the count misses c.
Partition ap_target_clusters(const DistanceMatrix& d, int c,
                             const ApSettings& settings = {},
                             ApSearchStats* stats = nullptr);

// Affinity propagation on negated tree-path kernel distances.
Partition mc_ap(const DataMatrix& x, int c, Metric metric = Metric::euclidean,
                ApSearchStats* stats = nullptr);

}  // namespace mcmcl
