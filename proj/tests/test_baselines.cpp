#include <algorithm>
#include <cstddef>
#include <vector>

#include "doctest.h"
#include "mcmcl/baselines.hpp"
#include "mcmcl/metrics.hpp"
#include "mcmcl/rng.hpp"
#include "oracles.hpp"

using namespace mcmcl;

namespace {

DataMatrix points(std::vector<std::vector<double>> rows) {
    DataMatrix x;
    x.values = Matrix(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) x.values(i, j) = rows[i][j];
    return x;
}

}  // namespace

TEST_CASE("k-means recovers well separated blobs") {
    Rng rng(3);
    auto [x, truth] = oracle::make_blobs(rng, {{0, 0}, {12, 0}, {0, 12}}, 15, 1.0);
    auto part = kmeans(x, 3);
    CHECK(part.n_clusters == 3);
    CHECK(accuracy(truth, part.labels) == doctest::Approx(1.0));
}

TEST_CASE("the winning restart's objective never increases") {
    Rng rng(5);
    auto [x, truth] = oracle::make_blobs(rng, {{0, 0}, {6, 1}}, 20, 2.0);
    KmeansTrace trace;
    kmeans(x, 2, Metric::euclidean, 10, 1, &trace);
    REQUIRE(trace.objective_per_iteration.size() >= 1);
    CHECK(trace.best_restart >= 0);
    CHECK(trace.best_restart < 10);
    for (std::size_t i = 1; i < trace.objective_per_iteration.size(); ++i)
        CHECK(trace.objective_per_iteration[i] <=
              trace.objective_per_iteration[i - 1] + 1e-9);
}

TEST_CASE("k-means is deterministic for a fixed seed") {
    Rng rng(7);
    auto [x, truth] = oracle::make_blobs(rng, {{0, 0}, {5, 5}}, 12, 1.5);
    auto a = kmeans(x, 2, Metric::euclidean, 20, 42);
    auto b = kmeans(x, 2, Metric::euclidean, 20, 42);
    CHECK(a.labels == b.labels);
}

TEST_CASE("one cluster swallows everything") {
    Rng rng(9);
    auto [x, truth] = oracle::make_blobs(rng, {{0, 0}, {5, 5}}, 6, 1.0);
    auto part = kmeans(x, 1);
    CHECK(part.n_clusters == 1);
    for (int l : part.labels) CHECK(l == 1);
}

TEST_CASE("as many clusters as points means all singletons") {
    auto x = points({{0.0}, {2.0}, {5.0}, {9.0}});
    auto part = kmeans(x, 4, Metric::euclidean, 3);
    CHECK(part.n_clusters == 4);
    LabelVector sorted = part.labels;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == LabelVector{1, 2, 3, 4});
}

TEST_CASE("duplicate points force the empty-cluster reseed") {
    // two coincident points make two chosen centers collide; the stranded
    // center must be reseeded rather than dropped
    auto x = points({{0.0}, {0.0}, {10.0}});
    auto part = kmeans(x, 3, Metric::euclidean, 1);
    CHECK(part.n_clusters == 3);
    LabelVector sorted = part.labels;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == LabelVector{1, 2, 3});
}

TEST_CASE("correlation k-means groups rows by shape, not scale") {
    Rng rng(11);
    DataMatrix x;
    x.values = Matrix(12, 4);
    LabelVector truth;
    for (std::size_t i = 0; i < 12; ++i) {
        const bool rising = i < 6;
        for (std::size_t j = 0; j < 4; ++j) {
            double base = rising ? static_cast<double>(j) : static_cast<double>(3 - j);
            double scale = 1.0 + static_cast<double>(i % 3);
            x.values(i, j) = scale * base + rng.uniform(-0.1, 0.1);
        }
        truth.push_back(rising ? 1 : 2);
    }
    auto part = kmeans(x, 2, Metric::correlation, 20);
    CHECK(part.n_clusters == 2);
    CHECK(accuracy(truth, part.labels) == doctest::Approx(1.0));
}

TEST_CASE("k-means validates its arguments") {
    auto x = points({{0.0}, {1.0}});
    CHECK_THROWS_AS(kmeans(x, 0), std::invalid_argument);
    CHECK_THROWS_AS(kmeans(x, 3), std::invalid_argument);
    CHECK_THROWS_AS(kmeans(x, 1, Metric::euclidean, 0), std::invalid_argument);
    CHECK_THROWS_AS(kmeans(x, 1, Metric::correlation), std::invalid_argument);
}

TEST_CASE("density clustering labels far points as noise") {
    auto d = euclidean_distance_matrix(
        points({{0.0}, {0.5}, {1.0}, {10.0}, {10.5}, {11.0}, {50.0}}));
    auto part = dbscan(d, 1.0, 2);
    CHECK(part.n_clusters == 2);
    CHECK(part.labels == LabelVector{1, 1, 1, 2, 2, 2, 0});
}

TEST_CASE("the eps ball is closed and counts the point itself") {
    auto d = euclidean_distance_matrix(points({{0.0}, {1.0}}));
    auto part = dbscan(d, 1.0, 2);
    CHECK(part.n_clusters == 1);
    CHECK(part.labels == LabelVector{1, 1});
}

TEST_CASE("density clustering does not depend on point order") {
    auto base = points({{0.0}, {0.5}, {1.0}, {10.0}, {10.5}, {11.0}, {50.0}});
    auto reference = dbscan(euclidean_distance_matrix(base), 1.0, 2);

    const std::vector<std::size_t> perm = {6, 2, 4, 0, 5, 1, 3};
    DataMatrix shuffled;
    shuffled.values = Matrix(7, 1);
    for (std::size_t i = 0; i < 7; ++i) shuffled.values(i, 0) = base.values(perm[i], 0);
    auto permuted = dbscan(euclidean_distance_matrix(shuffled), 1.0, 2);

    LabelVector unshuffled(7, 0);
    for (std::size_t i = 0; i < 7; ++i) unshuffled[perm[i]] = permuted.labels[i];
    CHECK(canonicalize_labels(unshuffled) == reference.labels);
}

TEST_CASE("density parameters are validated") {
    auto d = euclidean_distance_matrix(points({{0.0}, {1.0}}));
    CHECK_THROWS_AS(dbscan(d, -0.5, 2), std::invalid_argument);
    CHECK_THROWS_AS(dbscan(d, 1.0, 0), std::invalid_argument);
}

TEST_CASE("the density search finds a noise-free three-way split") {
    Rng rng(13);
    auto [x, truth] = oracle::make_blobs(rng, {{0, 0}, {15, 0}, {0, 15}}, 12, 1.0);
    DbscanSearchStats stats;
    auto part = dbscan_target_clusters(euclidean_distance_matrix(x), 3, &stats);
    CHECK_FALSE(part.search_failed);
    CHECK(part.n_clusters == 3);
    CHECK(stats.reached);
    CHECK(stats.probes >= 1);
    for (int l : part.labels) CHECK(l != kNoiseLabel);
    CHECK(accuracy(truth, part.labels) == doctest::Approx(1.0));
}

TEST_CASE("an impossible density target comes back flagged") {
    auto d = euclidean_distance_matrix(points({{0.0}, {1.0}, {2.0}, {3.0}}));
    DbscanSearchStats stats;
    auto part = dbscan_target_clusters(d, 5, &stats);
    CHECK(part.search_failed);
    CHECK_FALSE(stats.reached);
    CHECK(part.note == "no (min_pts, eps) produced 5 noise-free clusters");
    CHECK_THROWS_AS(dbscan_target_clusters(d, 0), std::invalid_argument);
}

TEST_CASE("a rock-bottom preference yields a single exemplar") {
    // n = 2 is degenerate (the exemplar margin converges to exactly zero),
    // so the smallest clean case is three points
    auto d = euclidean_distance_matrix(points({{0.0}, {1.0}, {2.0}}));
    auto part = affinity_propagation(d, -1000.0);
    CHECK(part.n_clusters == 1);
}

TEST_CASE("a generous preference makes every point its own exemplar") {
    auto d = euclidean_distance_matrix(points({{0.0}, {5.0}}));
    auto part = affinity_propagation(d, 0.0);
    CHECK(part.n_clusters == 2);
}

TEST_CASE("the median-preference heuristic resolves three blobs") {
    Rng rng(17);
    auto [x, truth] = oracle::make_blobs(rng, {{0, 0}, {10, 0}, {0, 10}}, 8, 0.5);
    auto d = euclidean_distance_matrix(x);
    std::vector<double> offdiag;
    for (std::size_t i = 0; i < d.n(); ++i)
        for (std::size_t j = i + 1; j < d.n(); ++j) offdiag.push_back(-d.d(i, j));
    std::nth_element(offdiag.begin(), offdiag.begin() + offdiag.size() / 2, offdiag.end());
    auto part = affinity_propagation(d, offdiag[offdiag.size() / 2]);
    CHECK(part.n_clusters == 3);
    CHECK(adjusted_rand_index(truth, part.labels) == doctest::Approx(1.0));
}

TEST_CASE("message passing rejects out-of-range damping") {
    auto d = euclidean_distance_matrix(points({{0.0}, {5.0}}));
    ApSettings settings;
    settings.damping = 1.0;
    CHECK_THROWS_AS(affinity_propagation(d, -1.0, settings), std::invalid_argument);
}

TEST_CASE("the preference search lands on the requested count") {
    Rng rng(19);
    auto [x, truth] = oracle::make_blobs(rng, {{0, 0}, {12, 0}, {0, 12}}, 8, 0.8);
    ApSearchStats stats;
    auto part = ap_target_clusters(euclidean_distance_matrix(x), 3, {}, &stats);
    CHECK_FALSE(part.search_failed);
    CHECK(part.n_clusters == 3);
    CHECK(stats.reached);
    CHECK(stats.probes <= 60);
    CHECK(accuracy(truth, part.labels) == doctest::Approx(1.0));
}

TEST_CASE("an impossible exemplar count comes back flagged") {
    auto d = euclidean_distance_matrix(points({{0.0}, {5.0}}));
    ApSearchStats stats;
    auto part = ap_target_clusters(d, 5, {}, &stats);
    CHECK(part.search_failed);
    CHECK_FALSE(stats.reached);
    CHECK(stats.probes <= 60);
    CHECK(part.note == "no preference produced 5 clusters");
}

TEST_CASE("tree-path message passing recovers the blobs") {
    Rng rng(23);
    auto [x, truth] = oracle::make_blobs(rng, {{0, 0}, {14, 0}, {0, 14}}, 10, 1.0);
    ApSearchStats stats;
    auto part = mc_ap(x, 3, Metric::euclidean, &stats);
    CHECK_FALSE(part.search_failed);
    CHECK(part.n_clusters == 3);
    CHECK(accuracy(truth, part.labels) == doctest::Approx(1.0));
}
