#pragma once

#include <cstddef>
#include <vector>

#include "mcmcl/dataset.hpp"
#include "mcmcl/matrix.hpp"

namespace mcmcl {

enum class Metric { euclidean, correlation };

// Entrywise transform applied to a distance matrix before tree extraction.
enum class Factor { original, sqrt, log };

struct DistanceMatrix {
    Matrix d;
    Metric metric = Metric::euclidean;
    Factor factor = Factor::original;

    std::size_t n() const { return d.rows(); }
};

struct SpanningTree {
    struct Edge {
        std::size_t a, b;  // a < b
        double weight;
    };
    std::vector<Edge> edges;  // n - 1 of them, in acceptance order
    std::size_t n = 0;
    Metric metric = Metric::euclidean;
    Factor factor = Factor::original;

    double total_weight() const;
};

// All-pairs path distances over a spanning tree.
struct McDistanceKernel {
    Matrix d;
    Metric metric = Metric::euclidean;
    Factor factor = Factor::original;

    std::size_t n() const { return d.rows(); }
};

// Pairwise Euclidean distances between rows; n >= 2.
DistanceMatrix euclidean_distance_matrix(const DataMatrix& x);

// Pairwise 1 - Pearson(rows); needs m >= 2 and no constant row.
DistanceMatrix correlation_distance_matrix(const DataMatrix& x);

// original copies, sqrt takes entrywise square roots, log takes ln(1 + x).
DistanceMatrix apply_factor(const DistanceMatrix& d, Factor factor);

// Minimum spanning tree over the complete weighted graph. Equal-weight
// candidates are taken in ascending (a, b) order, so the result is
// deterministic even with ties.
SpanningTree minimum_spanning_tree(const DistanceMatrix& d);

// Sums edge weights along the unique path of every node pair.
McDistanceKernel mc_distance_kernel(const SpanningTree& tree);

// Undirected weighted network; weights in [0, 1], zero diagonal.
struct SimilarityNetwork {
    Matrix w;

    std::size_t n() const { return w.rows(); }
};

// w = 1 - d / max(d) off the diagonal. Euclidean-tagged input only.
SimilarityNetwork euclidean_similarity(const DistanceMatrix& d);

// w = max(0, 1 - d) off the diagonal. Correlation-tagged input only.
SimilarityNetwork correlation_similarity(const DistanceMatrix& d);

}  // namespace mcmcl
