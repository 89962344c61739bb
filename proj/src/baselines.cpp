#include "mcmcl/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "mcmcl/mcl.hpp"
#include "mcmcl/rng.hpp"

namespace mcmcl {

namespace {

// Distance from a sample row to a centroid under the active metric. A
// centroid with no variance cannot be correlated; call that distance 1.
double point_distance(const double* a, const double* b, std::size_t m, Metric metric) {
    if (metric == Metric::euclidean) {
        double s = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            double diff = a[k] - b[k];
            s += diff * diff;
        }
        return std::sqrt(s);
    }
    double mean_a = 0.0, mean_b = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        mean_a += a[k];
        mean_b += b[k];
    }
    mean_a /= static_cast<double>(m);
    mean_b /= static_cast<double>(m);
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        double ca = a[k] - mean_a;
        double cb = b[k] - mean_b;
        dot += ca * cb;
        na += ca * ca;
        nb += cb * cb;
    }
    if (na == 0.0 || nb == 0.0) return 1.0;
    double r = std::clamp(dot / std::sqrt(na * nb), -1.0, 1.0);
    return 1.0 - r;
}

struct LloydRun {
    LabelVector assign;
    double objective = 0.0;
    std::vector<double> trajectory;
};

LloydRun lloyd(const DataMatrix& x, int k, Metric metric, Rng& rng, int max_iterations) {
    const std::size_t n = x.n(), m = x.m();

    // distinct initial centers via partial Fisher-Yates
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (int i = 0; i < k; ++i) {
        std::size_t j = static_cast<std::size_t>(i) + rng.index(n - static_cast<std::size_t>(i));
        std::swap(order[static_cast<std::size_t>(i)], order[j]);
    }
    Matrix centroids(static_cast<std::size_t>(k), m);
    for (int c = 0; c < k; ++c) {
        const double* src = x.values.row(order[static_cast<std::size_t>(c)]);
        std::copy(src, src + m, centroids.row(static_cast<std::size_t>(c)));
    }

    LloydRun run;
    run.assign.assign(n, 0);
    std::vector<double> nearest(n, 0.0);
    std::vector<std::size_t> sizes(static_cast<std::size_t>(k), 0);

    for (int it = 0; it < max_iterations; ++it) {
        bool changed = false;
        double objective = 0.0;
        std::fill(sizes.begin(), sizes.end(), std::size_t{0});
        for (std::size_t i = 0; i < n; ++i) {
            int best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (int c = 0; c < k; ++c) {
                double d = point_distance(x.values.row(i),
                                          centroids.row(static_cast<std::size_t>(c)), m, metric);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            if (run.assign[i] != best + 1) changed = true;
            run.assign[i] = best + 1;
            nearest[i] = best_d;
            ++sizes[static_cast<std::size_t>(best)];
            objective += best_d * best_d;
        }

        // empty clusters reseed to the worst-fit point, lowest index on ties
        for (int c = 0; c < k; ++c) {
            if (sizes[static_cast<std::size_t>(c)] != 0) continue;
            std::size_t worst = 0;
            double worst_d = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (sizes[static_cast<std::size_t>(run.assign[i] - 1)] > 1 && nearest[i] > worst_d) {
                    worst_d = nearest[i];
                    worst = i;
                }
            }
            --sizes[static_cast<std::size_t>(run.assign[worst] - 1)];
            run.assign[worst] = c + 1;
            nearest[worst] = 0.0;
            ++sizes[static_cast<std::size_t>(c)];
            changed = true;
        }

        run.trajectory.push_back(objective);
        run.objective = objective;
        if (!changed && it > 0) break;

        Matrix sums(static_cast<std::size_t>(k), m);
        std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
        for (std::size_t i = 0; i < n; ++i) {
            auto c = static_cast<std::size_t>(run.assign[i] - 1);
            ++counts[c];
            const double* r = x.values.row(i);
            double* s = sums.row(c);
            for (std::size_t f = 0; f < m; ++f) s[f] += r[f];
        }
        for (std::size_t c = 0; c < static_cast<std::size_t>(k); ++c) {
            if (counts[c] == 0) continue;
            double* s = sums.row(c);
            double* dst = centroids.row(c);
            for (std::size_t f = 0; f < m; ++f) dst[f] = s[f] / static_cast<double>(counts[c]);
        }
    }
    return run;
}

}  // namespace

Partition kmeans(const DataMatrix& x, int k, Metric metric, int restarts,
                 std::uint64_t seed, KmeansTrace* trace) {
    const std::size_t n = x.n();
    if (k < 1 || static_cast<std::size_t>(k) > n) {
        throw std::invalid_argument("cluster count must lie in [1, n]");
    }
    if (restarts < 1) throw std::invalid_argument("need at least one restart");
    if (metric == Metric::correlation && x.m() < 2) {
        throw std::invalid_argument("correlation needs at least two features");
    }

    Rng master(seed);
    std::vector<std::uint64_t> restart_seeds(static_cast<std::size_t>(restarts));
    for (auto& s : restart_seeds) s = master.next_word();

    LloydRun best;
    int best_restart = -1;
    for (int r = 0; r < restarts; ++r) {
        Rng rng(restart_seeds[static_cast<std::size_t>(r)]);
        LloydRun run = lloyd(x, k, metric, rng, 300);
        if (best_restart < 0 || run.objective < best.objective) {
            best = std::move(run);
            best_restart = r;
        }
    }

    if (trace) {
        trace->objective_per_iteration = best.trajectory;
        trace->best_restart = best_restart;
    }
    return Partition::from_labels(best.assign);
}

Partition dbscan(const DistanceMatrix& d, double eps, std::size_t min_pts) {
    if (eps < 0.0) throw std::invalid_argument("eps must be nonnegative");
    if (min_pts < 1) throw std::invalid_argument("min_pts must be positive");
    const std::size_t n = d.n();

    std::vector<std::vector<std::size_t>> neighbors(n);
    std::vector<char> core(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (d.d(i, j) <= eps) neighbors[i].push_back(j);  // includes i itself
        }
        core[i] = neighbors[i].size() >= min_pts;
    }

    LabelVector labels(n, kNoiseLabel);
    int cluster = 0;
    std::deque<std::size_t> queue;
    for (std::size_t s = 0; s < n; ++s) {
        if (labels[s] != kNoiseLabel || !core[s]) continue;
        ++cluster;
        labels[s] = cluster;
        queue.assign(1, s);
        while (!queue.empty()) {
            std::size_t u = queue.front();
            queue.pop_front();
            if (!core[u]) continue;  // border points do not expand
            for (std::size_t v : neighbors[u]) {
                if (labels[v] == kNoiseLabel) {
                    labels[v] = cluster;
                    queue.push_back(v);
                }
            }
        }
    }
    return Partition::from_labels(labels);
}

Partition dbscan_target_clusters(const DistanceMatrix& d, int c, DbscanSearchStats* stats) {
    if (c < 1) throw std::invalid_argument("target cluster count must be positive");
    const std::size_t n = d.n();

    double min_pos = std::numeric_limits<double>::infinity();
    double max_d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = d.d(i, j);
            if (v > 0.0 && v < min_pos) min_pos = v;
            if (v > max_d) max_d = v;
        }
    }
    if (!std::isfinite(min_pos)) min_pos = 0.0;  // all points coincide

    DbscanSearchStats local;
    Partition best;
    long best_score = -1;

    auto consider = [&](const Partition& p, std::size_t noise) {
        long gap = std::abs(p.n_clusters - c);
        long score = gap * static_cast<long>(n + 1) + static_cast<long>(noise);
        if (best_score < 0 || score < best_score) {
            best_score = score;
            best = p;
        }
    };

    for (std::size_t min_pts = 1; min_pts <= n; ++min_pts) {
        double lo = min_pos;
        double hi = max_d;
        for (int step = 0; step < 60; ++step) {
            double eps = 0.5 * (lo + hi);
            Partition p = dbscan(d, eps, min_pts);
            ++local.probes;
            std::size_t noise = 0;
            for (int l : p.labels) noise += l == kNoiseLabel;
            if (p.n_clusters == c && noise == 0) {
                local.reached = true;
                local.min_pts = min_pts;
                local.eps = eps;
                if (stats) *stats = local;
                return p;
            }
            consider(p, noise);
            // too few clusters: shrink the ball; otherwise grow it to
            // merge spare clusters and absorb noise
            if (p.n_clusters < c) {
                hi = eps;
            } else {
                lo = eps;
            }
            if (hi <= lo) break;
        }
    }

    best.search_failed = true;
    best.note = "no (min_pts, eps) produced " + std::to_string(c) + " noise-free clusters";
    if (stats) *stats = local;
    return best;
}

namespace {

std::vector<std::size_t> current_exemplars(const Matrix& r, const Matrix& a) {
    std::vector<std::size_t> e;
    for (std::size_t i = 0; i < r.rows(); ++i) {
        if (r(i, i) + a(i, i) > 0.0) e.push_back(i);
    }
    return e;
}

}  // namespace

Partition affinity_propagation(const DistanceMatrix& d, double preference,
                               const ApSettings& settings) {
    if (!(settings.damping >= 0.0) || !(settings.damping < 1.0)) {
        throw std::invalid_argument("damping must lie in [0, 1)");
    }
    const std::size_t n = d.n();

    Matrix s(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) s(i, j) = i == j ? preference : -d.d(i, j);
    }

    Matrix r(n, n), a(n, n);
    const double keep = settings.damping;
    const double mix = 1.0 - keep;

    std::vector<std::size_t> stable_set;
    int stable_for = 0;
    bool settled = false;

    for (int it = 0; it < settings.max_iterations; ++it) {
        // responsibilities: r(i,k) = s(i,k) - max_{k' != k} (a(i,k') + s(i,k'))
        for (std::size_t i = 0; i < n; ++i) {
            double top = -std::numeric_limits<double>::infinity();
            double second = top;
            std::size_t top_k = 0;
            for (std::size_t k = 0; k < n; ++k) {
                double v = a(i, k) + s(i, k);
                if (v > top) {
                    second = top;
                    top = v;
                    top_k = k;
                } else if (v > second) {
                    second = v;
                }
            }
            for (std::size_t k = 0; k < n; ++k) {
                double rival = k == top_k ? second : top;
                r(i, k) = keep * r(i, k) + mix * (s(i, k) - rival);
            }
        }

        // availabilities: a(i,k) = min(0, r(k,k) + sum_{i' != i,k} max(0, r(i',k)))
        for (std::size_t k = 0; k < n; ++k) {
            double pos_sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (i != k) pos_sum += std::max(0.0, r(i, k));
            }
            for (std::size_t i = 0; i < n; ++i) {
                double fresh;
                if (i == k) {
                    fresh = pos_sum;
                } else {
                    fresh = std::min(0.0, r(k, k) + pos_sum - std::max(0.0, r(i, k)));
                }
                a(i, k) = keep * a(i, k) + mix * fresh;
            }
        }

        auto exemplars = current_exemplars(r, a);
        if (it > 0 && !exemplars.empty() && exemplars == stable_set) {
            if (++stable_for >= settings.stable_window) {
                settled = true;
                break;
            }
        } else {
            stable_set = std::move(exemplars);
            stable_for = 0;
        }
    }

    auto exemplars = current_exemplars(r, a);
    bool forced = false;
    if (exemplars.empty()) {
        // nobody volunteers; elect the strongest diagonal so every point
        // still lands somewhere
        std::size_t best = 0;
        double best_v = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            double v = r(i, i) + a(i, i);
            if (v > best_v) {
                best_v = v;
                best = i;
            }
        }
        exemplars.assign(1, best);
        forced = true;
    }

    LabelVector raw(n, kNoiseLabel);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t best = exemplars.front();
        double best_s = -std::numeric_limits<double>::infinity();
        for (std::size_t e : exemplars) {
            if (i == e) {
                best = e;
                break;
            }
            if (s(i, e) > best_s) {
                best_s = s(i, e);
                best = e;
            }
        }
        raw[i] = static_cast<int>(best) + 1;
    }

    Partition out = Partition::from_labels(raw);
    out.convergence_warning = !settled && !forced;
    return out;
}

Partition ap_target_clusters(const DistanceMatrix& d, int c, const ApSettings& settings,
                             ApSearchStats* stats) {
    if (c < 1) throw std::invalid_argument("target cluster count must be positive");
    const std::size_t n = d.n();

    double max_d = 0.0;
    double min_off = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            max_d = std::max(max_d, d.d(i, j));
            min_off = std::min(min_off, d.d(i, j));
        }
    }

    double lo = -max_d;           // few clusters down here
    double hi = -min_off;         // everyone self-exemplars up here
    ApSearchStats local;
    Partition best;
    int best_gap = -1;

    auto probe = [&](double preference) {
        Partition p = affinity_propagation(d, preference, settings);
        ++local.probes;
        int gap = std::abs(p.n_clusters - c);
        if (best_gap < 0 || gap < best_gap) {
            best_gap = gap;
            best = p;
            local.preference = preference;
        }
        return p;
    };

    // The negated maximum distance can still leave far more exemplars than
    // wanted (self-preference competes against n accumulated availabilities),
    // so push the lower end out by doubling until it undershoots the target.
    while (local.probes < 40) {
        Partition p = probe(lo);
        if (p.n_clusters == c) {
            local.reached = true;
            if (stats) *stats = local;
            return p;
        }
        if (p.n_clusters < c) break;
        hi = lo;
        lo *= 2.0;
    }

    while (local.probes < 60) {
        double preference = 0.5 * (lo + hi);
        Partition p = probe(preference);
        if (p.n_clusters == c) {
            local.reached = true;
            if (stats) *stats = local;
            return p;
        }
        if (p.n_clusters < c) {
            lo = preference;
        } else {
            hi = preference;
        }
        if (hi <= lo) break;
    }

    best.search_failed = true;
    best.note = "no preference produced " + std::to_string(c) + " clusters";
    if (stats) *stats = local;
    return best;
}

Partition mc_ap(const DataMatrix& x, int c, Metric metric, ApSearchStats* stats) {
    DistanceMatrix d = metric == Metric::euclidean ? euclidean_distance_matrix(x)
                                                   : correlation_distance_matrix(x);
    SpanningTree tree = minimum_spanning_tree(d);
    McDistanceKernel kernel = mc_distance_kernel(tree);
    DistanceMatrix tree_distances{kernel.d, kernel.metric, kernel.factor};
    return ap_target_clusters(tree_distances, c, ApSettings{}, stats);
}

}  // namespace mcmcl
