#include "mcmcl/sparsity.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mcmcl {

namespace {

void check_threshold(double t) {
    if (!(t >= 0.0) || !(t < 1.0)) {
        throw std::invalid_argument("threshold must lie in [0, 1)");
    }
}

}  // namespace

SimilarityNetwork mc_similarity_corr(const McDistanceKernel& mc, double t) {
    if (mc.metric != Metric::correlation) {
        throw std::invalid_argument("kernel was not built from correlation distances");
    }
    check_threshold(t);
    const std::size_t n = mc.n();
    Matrix w(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            w(i, j) = std::max(0.0, 1.0 - mc.d(i, j) - t);
        }
    }
    return SimilarityNetwork{std::move(w)};
}

SimilarityNetwork mc_similarity_eucl(const McDistanceKernel& mc, double t) {
    if (mc.metric != Metric::euclidean) {
        throw std::invalid_argument("kernel was not built from Euclidean distances");
    }
    check_threshold(t);
    const std::size_t n = mc.n();
    double top = max_entry(mc.d);
    if (top <= 0.0) throw std::runtime_error("all kernel distances are zero");
    Matrix w(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            w(i, j) = std::max(0.0, 1.0 - mc.d(i, j) / top - t);
        }
    }
    return SimilarityNetwork{std::move(w)};
}

SimilarityNetwork prune_and_rescale(const SimilarityNetwork& w, double t) {
    check_threshold(t);
    const std::size_t n = w.n();
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            out(i, j) = std::max(0.0, w.w(i, j) - t);
        }
    }
    return SimilarityNetwork{std::move(out)};
}

std::size_t count_components(const SimilarityNetwork& w) {
    const std::size_t n = w.n();
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> stack;
    std::size_t components = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        ++components;
        seen[s] = 1;
        stack.assign(1, s);
        while (!stack.empty()) {
            std::size_t u = stack.back();
            stack.pop_back();
            for (std::size_t v = 0; v < n; ++v) {
                if (!seen[v] && w.w(u, v) > 0.0) {
                    seen[v] = 1;
                    stack.push_back(v);
                }
            }
        }
    }
    return components;
}

SparsityResult enforce_sparsity(const SimilarityNetwork& w) {
    const std::size_t n = w.n();
    if (count_components(w) != 1) {
        throw std::runtime_error("network must start as one connected component");
    }

    struct E {
        double weight;
        std::size_t a, b;
    };
    std::vector<E> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (w.w(i, j) > 0.0) edges.push_back({w.w(i, j), i, j});
        }
    }
    std::vector<double> candidates;
    candidates.reserve(edges.size());
    for (const auto& e : edges) candidates.push_back(e.weight);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    // Pruning at cutoff t keeps exactly the edges with weight > t, so
    // connectivity is monotone in t. Sweeping candidates downward with an
    // incremental union-find therefore lands on the same cutoff the literal
    // ascending rescan would pick (the unit tests compare both).
    std::sort(edges.begin(), edges.end(),
              [](const E& x, const E& y) { return x.weight > y.weight; });

    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };

    std::size_t components = n;
    std::size_t next_edge = 0;
    std::ptrdiff_t connected_at = -1;
    for (std::ptrdiff_t k = static_cast<std::ptrdiff_t>(candidates.size()) - 1; k >= 0; --k) {
        while (next_edge < edges.size() && edges[next_edge].weight > candidates[k]) {
            std::size_t ra = find(edges[next_edge].a);
            std::size_t rb = find(edges[next_edge].b);
            if (ra != rb) {
                parent[rb] = ra;
                --components;
            }
            ++next_edge;
        }
        if (components == 1) {
            connected_at = k;
            break;
        }
    }

    SparsityResult result;
    if (connected_at < 0) {
        // Even the smallest cutoff splits the network; leave it untouched.
        result.network = w;
        result.first_candidate_disconnects = true;
        if (!candidates.empty()) result.thresholds_tested.push_back(candidates.front());
        return result;
    }

    std::size_t last_tested =
        std::min(static_cast<std::size_t>(connected_at) + 1, candidates.size() - 1);
    result.thresholds_tested.assign(candidates.begin(),
                                    candidates.begin() + static_cast<std::ptrdiff_t>(last_tested) + 1);
    result.selected_threshold = candidates[static_cast<std::size_t>(connected_at)];
    result.pruned = true;
    result.network = prune_and_rescale(w, result.selected_threshold);
    return result;
}

}  // namespace mcmcl
