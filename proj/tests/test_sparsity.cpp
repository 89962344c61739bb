#include <algorithm>
#include <cstddef>
#include <vector>

#include "doctest.h"
#include "mcmcl/rng.hpp"
#include "mcmcl/sparsity.hpp"
#include "oracles.hpp"

using namespace mcmcl;

namespace {

SimilarityNetwork network(std::vector<std::vector<double>> rows) {
    SimilarityNetwork w;
    w.w = Matrix(rows.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.size(); ++j) w.w(i, j) = rows[i][j];
    return w;
}

}  // namespace

TEST_CASE("pruning shifts surviving weights down by the cutoff") {
    auto w = network({{0, 0.7}, {0.7, 0}});
    auto cut = prune_and_rescale(w, 0.2);
    CHECK(cut.w(0, 1) == doctest::Approx(0.5));
}

TEST_CASE("weights at or below the cutoff vanish") {
    auto w = network({{0, 0.1, 0.2}, {0.1, 0, 0.9}, {0.2, 0.9, 0}});
    auto cut = prune_and_rescale(w, 0.2);
    CHECK(cut.w(0, 1) == 0.0);
    CHECK(cut.w(0, 2) == 0.0);  // equality with the cutoff also dies
    CHECK(cut.w(1, 2) == doctest::Approx(0.7));
}

TEST_CASE("a zero cutoff leaves the network untouched") {
    Rng rng(5);
    SimilarityNetwork w = oracle::random_connected_network(rng, 12);
    auto cut = prune_and_rescale(w, 0.0);
    CHECK(cut.w == w.w);
}

TEST_CASE("pruning twice with the same cutoff is the same as once plus zero") {
    Rng rng(9);
    SimilarityNetwork w = oracle::random_connected_network(rng, 10);
    auto once = prune_and_rescale(w, 0.3);
    auto again = prune_and_rescale(once, 0.0);
    CHECK(again.w == once.w);
}

TEST_CASE("pruning preserves the order of surviving weights") {
    Rng rng(13);
    SimilarityNetwork w = oracle::random_connected_network(rng, 10);
    auto cut = prune_and_rescale(w, 0.2);
    const std::size_t n = w.n();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l)
                    if (w.w(i, j) <= w.w(k, l)) CHECK(cut.w(i, j) <= cut.w(k, l) + 1e-15);
}

TEST_CASE("prune cutoff must lie in the unit interval") {
    auto w = network({{0, 0.5}, {0.5, 0}});
    CHECK_THROWS_AS(prune_and_rescale(w, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(prune_and_rescale(w, -0.2), std::invalid_argument);
}

TEST_CASE("component counting sees positive weights as edges") {
    CHECK(count_components(network({{0, 0.5, 0}, {0.5, 0, 0.1}, {0, 0.1, 0}})) == 1);
    CHECK(count_components(network({{0, 0.5, 0, 0}, {0.5, 0, 0, 0},
                                    {0, 0, 0, 0.3}, {0, 0, 0.3, 0}})) == 2);
    CHECK(count_components(network({{0, 0}, {0, 0}})) == 2);
    CHECK(count_components(network({{0}})) == 1);
}

TEST_CASE("triangle keeps its weakest edge cutoff") {
    // weights 0.2, 0.5, 0.9; cutting at 0.5 would strand a node
    auto w = network({{0, 0.2, 0.5}, {0.2, 0, 0.9}, {0.5, 0.9, 0}});
    auto result = enforce_sparsity(w);
    CHECK(result.pruned);
    CHECK_FALSE(result.first_candidate_disconnects);
    CHECK(result.selected_threshold == doctest::Approx(0.2));
    CHECK(result.network.w(0, 1) == 0.0);
    CHECK(result.network.w(0, 2) == doctest::Approx(0.3));
    CHECK(result.network.w(1, 2) == doctest::Approx(0.7));
    REQUIRE(result.thresholds_tested.size() == 2);
    CHECK(result.thresholds_tested[0] == doctest::Approx(0.2));
    CHECK(result.thresholds_tested[1] == doctest::Approx(0.5));
    CHECK(count_components(result.network) == 1);
}

TEST_CASE("a bare path cannot be pruned at all") {
    // removing the weakest edge of a path always strands its endpoint
    auto w = network({{0, 0.4, 0}, {0.4, 0, 0.8}, {0, 0.8, 0}});
    auto result = enforce_sparsity(w);
    CHECK(result.first_candidate_disconnects);
    CHECK_FALSE(result.pruned);
    CHECK(result.selected_threshold == 0.0);
    CHECK(result.network.w == w.w);
    REQUIRE(result.thresholds_tested.size() == 1);
    CHECK(result.thresholds_tested[0] == doctest::Approx(0.4));
}

TEST_CASE("uniform weights leave nothing to prune") {
    auto w = network({{0, 0.5, 0.5}, {0.5, 0, 0.5}, {0.5, 0.5, 0}});
    auto result = enforce_sparsity(w);
    CHECK(result.first_candidate_disconnects);
    CHECK(result.network.w == w.w);
}

TEST_CASE("sparsification refuses a disconnected network") {
    auto w = network({{0, 0.5, 0, 0}, {0.5, 0, 0, 0}, {0, 0, 0, 0.3}, {0, 0, 0.3, 0}});
    CHECK_THROWS_AS(enforce_sparsity(w), std::runtime_error);
}

TEST_CASE("sparsification matches the literal ascending scan") {
    Rng rng(17);
    for (int round = 0; round < 100; ++round) {
        const std::size_t n = 3 + rng.index(38);  // 3..40
        SimilarityNetwork w = oracle::random_connected_network(rng, n);
        auto result = enforce_sparsity(w);
        auto brute = oracle::enforce_sparsity_literal(w.w);

        CHECK(result.first_candidate_disconnects == brute.first_disconnects);
        CHECK(result.selected_threshold == doctest::Approx(brute.threshold).epsilon(1e-15));
        REQUIRE(result.network.w.rows() == brute.pruned.rows());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                CHECK(result.network.w(i, j) ==
                      doctest::Approx(brute.pruned(i, j)).epsilon(1e-15));

        // the survivor stays whole, and the next candidate would split it
        CHECK(count_components(result.network) == 1);
        if (!result.first_candidate_disconnects) {
            std::vector<double> candidates;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (w.w(i, j) > result.selected_threshold) candidates.push_back(w.w(i, j));
            if (!candidates.empty()) {
                double next = *std::min_element(candidates.begin(), candidates.end());
                CHECK(count_components(prune_and_rescale(w, next)) > 1);
            }
        }
    }
}

TEST_CASE("tested thresholds are recorded in ascending order") {
    Rng rng(19);
    SimilarityNetwork w = oracle::random_connected_network(rng, 15);
    auto result = enforce_sparsity(w);
    for (std::size_t k = 1; k < result.thresholds_tested.size(); ++k)
        CHECK(result.thresholds_tested[k - 1] < result.thresholds_tested[k]);
    if (!result.first_candidate_disconnects) {
        REQUIRE(result.thresholds_tested.size() >= 1);
        // the winning cutoff must be one of the probed candidates
        bool found = false;
        for (double t : result.thresholds_tested)
            if (t == result.selected_threshold) found = true;
        CHECK(found);
    }
}
