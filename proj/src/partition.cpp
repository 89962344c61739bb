#include "mcmcl/partition.hpp"

#include <unordered_map>

namespace mcmcl {

LabelVector canonicalize_labels(const LabelVector& labels) {
    LabelVector out(labels.size(), kNoiseLabel);
    std::unordered_map<int, int> remap;
    int next = 1;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == kNoiseLabel) continue;
        auto [it, inserted] = remap.emplace(labels[i], next);
        if (inserted) ++next;
        out[i] = it->second;
    }
    return out;
}

int count_clusters(const LabelVector& labels) {
    int top = 0;
    for (int l : canonicalize_labels(labels)) {
        if (l > top) top = l;
    }
    return top;
}

Partition Partition::from_labels(LabelVector raw) {
    Partition p;
    p.labels = canonicalize_labels(raw);
    p.n_clusters = count_clusters(p.labels);
    return p;
}

}  // namespace mcmcl
