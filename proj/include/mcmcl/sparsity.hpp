#pragma once

#include <cstddef>
#include <vector>

#include "mcmcl/kernels.hpp"

namespace mcmcl {

// w = max(0, 1 - d - t). Correlation-tagged kernels only; t in [0, 1).
SimilarityNetwork mc_similarity_corr(const McDistanceKernel& mc, double t);

// w = max(0, 1 - d / max(d) - t). Euclidean-tagged kernels only.
SimilarityNetwork mc_similarity_eucl(const McDistanceKernel& mc, double t);

// Entrywise max(0, w - t): weights below or at the cutoff vanish, the
// rest shift down by it.
SimilarityNetwork prune_and_rescale(const SimilarityNetwork& w, double t);

// Connected components over strictly positive weights.
std::size_t count_components(const SimilarityNetwork& w);

struct SparsityResult {
    SimilarityNetwork network;
    double selected_threshold = 0.0;  // 0 means nothing was pruned
    bool pruned = false;
    bool first_candidate_disconnects = false;
    std::vector<double> thresholds_tested;  // ascending candidates probed
};

// Walks the unique positive weights in ascending order and keeps the
// largest cutoff that still leaves one connected component. If even the
// smallest candidate splits the network, it is returned unpruned with a
// warning flag. Input must be connected.
SparsityResult enforce_sparsity(const SimilarityNetwork& w);

}  // namespace mcmcl
