#pragma once

#include <string>
#include <vector>

namespace mcmcl {

// Cluster labels are small positive integers. Label 0 is reserved for
// noise (density clustering leaves points unassigned that way).
using LabelVector = std::vector<int>;

inline constexpr int kNoiseLabel = 0;

// Relabels clusters 1..k in order of first appearance; noise stays 0.
LabelVector canonicalize_labels(const LabelVector& labels);

// Number of distinct non-noise labels.
int count_clusters(const LabelVector& labels);

struct Partition {
    LabelVector labels;
    int n_clusters = 0;
    bool search_failed = false;       // a target-count search missed its goal
    bool convergence_warning = false; // iteration cap hit before settling
    std::string note;

    static Partition from_labels(LabelVector raw);
};

}  // namespace mcmcl
