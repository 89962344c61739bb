#include "mcmcl/mcl.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mcmcl {

namespace {

// Column-compressed copy of the flow matrix. Entries are nonnegative and
// columns stay short once inflation starts pruning, so all the iteration
// work runs on these instead of the dense n x n array.
using SparseCol = std::vector<std::pair<std::size_t, double>>;

struct SparseCols {
    std::size_t n = 0;
    std::vector<SparseCol> cols;
};

SparseCols from_dense(const Matrix& m) {
    SparseCols s;
    s.n = m.rows();
    s.cols.resize(s.n);
    for (std::size_t j = 0; j < s.n; ++j) {
        for (std::size_t i = 0; i < s.n; ++i) {
            if (m(i, j) != 0.0) s.cols[j].emplace_back(i, m(i, j));
        }
    }
    return s;
}

Matrix to_dense(const SparseCols& s) {
    Matrix m(s.n, s.n);
    for (std::size_t j = 0; j < s.n; ++j) {
        for (const auto& [i, v] : s.cols[j]) m(i, j) = v;
    }
    return m;
}

// out(:, j) = sum_k b(k, j) * a(:, k); fixed iteration order keeps the
// floating-point result reproducible.
SparseCols multiply(const SparseCols& a, const SparseCols& b) {
    SparseCols out;
    out.n = a.n;
    out.cols.resize(out.n);
    std::vector<double> acc(a.n, 0.0);
    std::vector<std::size_t> touched;
    for (std::size_t j = 0; j < b.n; ++j) {
        touched.clear();
        for (const auto& [k, bv] : b.cols[j]) {
            for (const auto& [i, av] : a.cols[k]) {
                if (acc[i] == 0.0) touched.push_back(i);
                acc[i] += av * bv;
            }
        }
        std::sort(touched.begin(), touched.end());
        SparseCol& col = out.cols[j];
        col.reserve(touched.size());
        for (std::size_t i : touched) {
            col.emplace_back(i, acc[i]);
            acc[i] = 0.0;
        }
    }
    return out;
}

SparseCols sparse_power(const SparseCols& p, int power) {
    SparseCols out = multiply(p, p);
    for (int e = 3; e <= power; ++e) out = multiply(p, out);
    return out;
}

void inflate_columns(SparseCols& p, double r, double prune_floor) {
    for (std::size_t j = 0; j < p.n; ++j) {
        SparseCol& col = p.cols[j];
        if (col.empty()) {
            throw std::runtime_error("column " + std::to_string(j + 1) +
                                     " lost all mass during inflation");
        }
        double top = 0.0;
        for (auto& [i, v] : col) {
            v = std::pow(v, r);
            if (v > top) top = v;
        }
        double cut = prune_floor * top;
        std::size_t keep = 0;
        double sum = 0.0;
        for (const auto& [i, v] : col) {
            if (v >= cut && v > 0.0) {
                col[keep++] = {i, v};
                sum += v;
            }
        }
        col.resize(keep);
        for (auto& [i, v] : col) v /= sum;
    }
}

double max_abs_diff(const SparseCols& a, const SparseCols& b) {
    double worst = 0.0;
    for (std::size_t j = 0; j < a.n; ++j) {
        const SparseCol& x = a.cols[j];
        const SparseCol& y = b.cols[j];
        std::size_t ix = 0, iy = 0;
        while (ix < x.size() || iy < y.size()) {
            double diff;
            if (iy == y.size() || (ix < x.size() && x[ix].first < y[iy].first)) {
                diff = x[ix++].second;
            } else if (ix == x.size() || y[iy].first < x[ix].first) {
                diff = y[iy++].second;
            } else {
                diff = x[ix++].second - y[iy++].second;
            }
            worst = std::max(worst, std::fabs(diff));
        }
    }
    return worst;
}

double max_column_sum_error(const SparseCols& p) {
    double worst = 0.0;
    for (const auto& col : p.cols) {
        double sum = 0.0;
        for (const auto& [i, v] : col) sum += v;
        worst = std::max(worst, std::fabs(sum - 1.0));
    }
    return worst;
}

void check_inflation(double r) {
    if (!(r > 1.0)) throw std::invalid_argument("inflation must exceed 1");
}

}  // namespace

SimilarityNetwork add_self_loops(const SimilarityNetwork& w) {
    const std::size_t n = w.n();
    SimilarityNetwork out = w;
    for (std::size_t i = 0; i < n; ++i) {
        double top = 0.0;
        for (std::size_t j = 0; j < n; ++j) top = std::max(top, w.w(i, j));
        out.w(i, i) = top > 0.0 ? top : 1.0;
    }
    return out;
}

StochasticMatrix normalize_columns(const Matrix& m) {
    const std::size_t n = m.rows();
    Matrix p(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum += m(i, j);
        if (sum <= 0.0) {
            throw std::runtime_error("column " + std::to_string(j + 1) +
                                     " has no mass to normalize");
        }
        for (std::size_t i = 0; i < n; ++i) p(i, j) = m(i, j) / sum;
    }
    return StochasticMatrix{std::move(p)};
}

StochasticMatrix expand(const StochasticMatrix& p, int power) {
    if (power < 2) throw std::invalid_argument("expansion power must be at least 2");
    SparseCols s = sparse_power(from_dense(p.p), power);
    return StochasticMatrix{to_dense(s)};
}

StochasticMatrix inflate(const StochasticMatrix& p, double r, double prune_floor) {
    check_inflation(r);
    SparseCols s = from_dense(p.p);
    inflate_columns(s, r, prune_floor);
    return StochasticMatrix{to_dense(s)};
}

Partition extract_clusters(const StochasticMatrix& steady, double attractor_tol) {
    const std::size_t n = steady.n();
    const Matrix& p = steady.p;

    std::vector<std::size_t> attractors;
    std::vector<std::ptrdiff_t> attractor_slot(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        if (p(i, i) > attractor_tol) {
            attractor_slot[i] = static_cast<std::ptrdiff_t>(attractors.size());
            attractors.push_back(i);
        }
    }
    if (attractors.empty()) {
        throw std::runtime_error("no attractor rows: the flow matrix did not converge");
    }

    // Attractors that put mass on the same column belong to one attractor
    // system, hence one cluster.
    std::vector<std::size_t> parent(attractors.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (std::size_t j = 0; j < n; ++j) {
        std::ptrdiff_t first = -1;
        for (std::size_t s = 0; s < attractors.size(); ++s) {
            if (p(attractors[s], j) > attractor_tol) {
                if (first < 0) {
                    first = static_cast<std::ptrdiff_t>(s);
                } else {
                    std::size_t ra = find(static_cast<std::size_t>(first));
                    std::size_t rb = find(s);
                    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
                }
            }
        }
    }

    LabelVector raw(n, kNoiseLabel);
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t best = 0;
        double best_mass = -1.0;
        for (std::size_t s = 0; s < attractors.size(); ++s) {
            double mass = p(attractors[s], j);
            if (mass > best_mass) {
                best_mass = mass;
                best = s;
            }
        }
        raw[j] = static_cast<int>(find(best)) + 1;
    }
    return Partition::from_labels(raw);
}

Partition mcl_iterate(const SimilarityNetwork& w, const MclSettings& settings,
                      MclTrace* trace) {
    check_inflation(settings.inflation);
    if (settings.expansion_power < 2) {
        throw std::invalid_argument("expansion power must be at least 2");
    }

    StochasticMatrix start = normalize_columns(add_self_loops(w).w);
    SparseCols p = from_dense(start.p);

    MclTrace local;
    bool converged = false;
    for (int it = 1; it <= settings.max_iterations; ++it) {
        SparseCols next = sparse_power(p, settings.expansion_power);
        local.column_sum_errors.push_back(max_column_sum_error(next));
        inflate_columns(next, settings.inflation, settings.prune_floor);
        local.column_sum_errors.push_back(max_column_sum_error(next));
        double delta = max_abs_diff(next, p);
        p = std::move(next);
        local.iterations = it;
        if (delta < settings.convergence_tol) {
            converged = true;
            break;
        }
    }
    local.converged = converged;
    for (double e : local.column_sum_errors) {
        local.max_column_sum_error = std::max(local.max_column_sum_error, e);
    }

    Partition part = extract_clusters(StochasticMatrix{to_dense(p)}, settings.attractor_tol);
    part.convergence_warning = !converged;
    if (trace) *trace = std::move(local);
    return part;
}

namespace {

constexpr double kMinInflation = 1.1;
constexpr double kMaxInflation = 20.0;
constexpr double kResolutions[3] = {0.1, 0.01, 0.001};

std::vector<double> inflation_grid(double lo, double hi, double res) {
    auto steps = static_cast<std::size_t>(std::llround((hi - lo) / res));
    std::vector<double> grid(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) {
        grid[k] = std::min(lo + static_cast<double>(k) * res, kMaxInflation);
    }
    return grid;
}

}  // namespace

Partition mcl_target_clusters(const SimilarityNetwork& w, int target,
                              const MclSettings& base, InflationSearchStats* stats) {
    if (target < 1) throw std::invalid_argument("target cluster count must be positive");

    InflationSearchStats local;
    std::map<double, Partition> cache;
    auto probe = [&](double inflation) -> const Partition& {
        auto it = cache.find(inflation);
        if (it == cache.end()) {
            MclSettings s = base;
            s.inflation = inflation;
            ++local.probes;
            it = cache.emplace(inflation, mcl_iterate(w, s)).first;
            int got = it->second.n_clusters;
            if (got < target && got > local.nearest_below) local.nearest_below = got;
            if (got > target && (local.nearest_above < 0 || got < local.nearest_above)) {
                local.nearest_above = got;
            }
        }
        return it->second;
    };

    std::vector<double> grid = inflation_grid(kMinInflation, kMaxInflation, kResolutions[0]);
    // 1-based bisection indices, mirroring integer midpoint arithmetic
    long left = 1;
    long right = static_cast<long>(grid.size());
    long idx = (left + right) / 2;
    long last_left = left;
    long last_right = right;
    int number_clusters = 0;
    double found_inflation = 0.0;
    double best_inflation = 0.0;
    int best_gap = -1;

    for (double res : kResolutions) {
        if (left > right) {
            if (last_left == last_right) {
                if (number_clusters > target) {
                    --last_left;
                } else {
                    ++last_right;
                }
                if (last_right > static_cast<long>(grid.size()) || last_left < 1) {
                    break;  // widened past the inflation bounds
                }
            }
            grid = inflation_grid(grid[last_left - 1], grid[last_right - 1], res);
            left = 1;
            right = static_cast<long>(grid.size());
            idx = (left + right) / 2;
        }
        while (number_clusters != target) {
            double inflation = grid[idx - 1];
            const Partition& got = probe(inflation);
            number_clusters = got.n_clusters;
            int gap = std::abs(number_clusters - target);
            if (best_gap < 0 || gap < best_gap) {
                best_gap = gap;
                best_inflation = inflation;
            }
            if (number_clusters == target) found_inflation = inflation;
            last_left = left;
            last_right = right;
            if (number_clusters > target) {
                right = idx - 1;
            } else if (number_clusters < target) {
                left = idx + 1;
            }
            if (left > right) break;
            idx = (left + right) / 2;
        }
        if (number_clusters == target) break;
    }

    Partition out;
    if (number_clusters == target) {
        out = cache.at(found_inflation);
        local.reached = true;
        local.inflation = found_inflation;
    } else {
        out = cache.at(best_inflation);
        out.search_failed = true;
        out.note = "cluster count " + std::to_string(target) + " unreachable; nearest " +
                   (local.nearest_below >= 0 ? std::to_string(local.nearest_below) : "none") +
                   " below, " +
                   (local.nearest_above >= 0 ? std::to_string(local.nearest_above) : "none") +
                   " above";
    }
    if (stats) *stats = local;
    return out;
}

Partition mc_mcl(const DataMatrix& x, int target, Metric metric, Factor factor,
                 McMclInfo* info) {
    DistanceMatrix d = metric == Metric::euclidean ? euclidean_distance_matrix(x)
                                                   : correlation_distance_matrix(x);
    d = apply_factor(d, factor);
    SpanningTree tree = minimum_spanning_tree(d);
    McDistanceKernel kernel = mc_distance_kernel(tree);
    SimilarityNetwork similarity = metric == Metric::euclidean
                                       ? mc_similarity_eucl(kernel, 0.0)
                                       : mc_similarity_corr(kernel, 0.0);
    SparsityResult sparse = enforce_sparsity(similarity);

    McMclInfo local;
    local.selected_threshold = sparse.selected_threshold;
    local.sparsity_warning = sparse.first_candidate_disconnects;
    Partition part = mcl_target_clusters(sparse.network, target, MclSettings{}, &local.search);
    if (info) *info = local;
    return part;
}

}  // namespace mcmcl
