#include "mcmcl/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mcmcl {

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;

    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);  // keep the lower root, purely cosmetic
        parent[b] = a;
        return true;
    }
};

}  // namespace

double SpanningTree::total_weight() const {
    double sum = 0.0;
    for (const auto& e : edges) sum += e.weight;
    return sum;
}

DistanceMatrix euclidean_distance_matrix(const DataMatrix& x) {
    const std::size_t n = x.n(), m = x.m();
    if (n < 2) throw std::invalid_argument("need at least two samples");
    Matrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double* ri = x.values.row(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double* rj = x.values.row(j);
            double s = 0.0;
            for (std::size_t k = 0; k < m; ++k) {
                double diff = ri[k] - rj[k];
                s += diff * diff;
            }
            double dist = std::sqrt(s);
            d(i, j) = dist;
            d(j, i) = dist;
        }
    }
    return DistanceMatrix{std::move(d), Metric::euclidean, Factor::original};
}

DistanceMatrix correlation_distance_matrix(const DataMatrix& x) {
    const std::size_t n = x.n(), m = x.m();
    if (n < 2) throw std::invalid_argument("need at least two samples");
    if (m < 2) throw std::invalid_argument("correlation needs at least two features");

    // Center each row once; constant rows have no direction to correlate.
    Matrix centered(n, m);
    std::vector<double> norm(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double* r = x.values.row(i);
        bool constant = true;
        for (std::size_t k = 1; k < m; ++k) {
            if (r[k] != r[0]) { constant = false; break; }
        }
        if (constant) {
            throw std::runtime_error("sample " + std::to_string(i + 1) +
                                     " is constant; correlation is undefined");
        }
        double mean = 0.0;
        for (std::size_t k = 0; k < m; ++k) mean += r[k];
        mean /= static_cast<double>(m);
        double ss = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            double c = r[k] - mean;
            centered(i, k) = c;
            ss += c * c;
        }
        norm[i] = std::sqrt(ss);
    }

    Matrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double* ci = centered.row(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double* cj = centered.row(j);
            double dot = 0.0;
            for (std::size_t k = 0; k < m; ++k) dot += ci[k] * cj[k];
            double r = dot / (norm[i] * norm[j]);
            r = std::clamp(r, -1.0, 1.0);
            double dist = 1.0 - r;
            d(i, j) = dist;
            d(j, i) = dist;
        }
    }
    return DistanceMatrix{std::move(d), Metric::correlation, Factor::original};
}

DistanceMatrix apply_factor(const DistanceMatrix& d, Factor factor) {
    DistanceMatrix out{Matrix(d.n(), d.n()), d.metric, factor};
    const std::size_t n = d.n();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double v = d.d(i, j);
            switch (factor) {
                case Factor::original: break;
                case Factor::sqrt: v = std::sqrt(v); break;
                case Factor::log: v = std::log1p(v); break;
            }
            out.d(i, j) = v;
        }
    }
    return out;
}

SpanningTree minimum_spanning_tree(const DistanceMatrix& d) {
    const std::size_t n = d.n();
    if (n < 2) throw std::invalid_argument("need at least two nodes");

    struct E {
        double w;
        std::size_t a, b;
    };
    std::vector<E> edges;
    edges.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) edges.push_back({d.d(i, j), i, j});
    }
    std::sort(edges.begin(), edges.end(), [](const E& x, const E& y) {
        if (x.w != y.w) return x.w < y.w;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });

    SpanningTree tree;
    tree.n = n;
    tree.metric = d.metric;
    tree.factor = d.factor;
    tree.edges.reserve(n - 1);
    UnionFind uf(n);
    for (const auto& e : edges) {
        if (uf.unite(e.a, e.b)) {
            tree.edges.push_back({e.a, e.b, e.w});
            if (tree.edges.size() == n - 1) break;
        }
    }
    return tree;
}

McDistanceKernel mc_distance_kernel(const SpanningTree& tree) {
    const std::size_t n = tree.n;
    std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
    for (const auto& e : tree.edges) {
        adj[e.a].emplace_back(e.b, e.weight);
        adj[e.b].emplace_back(e.a, e.weight);
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());

    Matrix d(n, n);
    std::vector<double> dist(n);
    std::vector<std::size_t> stack;
    std::vector<std::size_t> parent(n);
    for (std::size_t root = 0; root < n; ++root) {
        dist[root] = 0.0;
        parent[root] = root;
        stack.assign(1, root);
        while (!stack.empty()) {
            std::size_t u = stack.back();
            stack.pop_back();
            for (const auto& [v, w] : adj[u]) {
                if (v == parent[u]) continue;
                parent[v] = u;
                dist[v] = dist[u] + w;
                stack.push_back(v);
            }
        }
        // mirror the upper triangle so the kernel is exactly symmetric
        for (std::size_t j = root + 1; j < n; ++j) {
            d(root, j) = dist[j];
            d(j, root) = dist[j];
        }
    }
    return McDistanceKernel{std::move(d), tree.metric, tree.factor};
}

SimilarityNetwork euclidean_similarity(const DistanceMatrix& d) {
    if (d.metric != Metric::euclidean) {
        throw std::invalid_argument("similarity rescaling expects Euclidean distances");
    }
    const std::size_t n = d.n();
    double top = max_entry(d.d);
    if (top <= 0.0) throw std::runtime_error("all distances are zero; nothing to rescale");
    Matrix w(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            w(i, j) = 1.0 - d.d(i, j) / top;
        }
    }
    return SimilarityNetwork{std::move(w)};
}

SimilarityNetwork correlation_similarity(const DistanceMatrix& d) {
    if (d.metric != Metric::correlation) {
        throw std::invalid_argument("correlation similarity expects correlation distances");
    }
    const std::size_t n = d.n();
    Matrix w(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            w(i, j) = std::max(0.0, 1.0 - d.d(i, j));
        }
    }
    return SimilarityNetwork{std::move(w)};
}

}  // namespace mcmcl
