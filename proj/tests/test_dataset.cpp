#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <string>

#include "mcmcl/dataset.hpp"

using namespace mcmcl;

namespace {

std::string temp_path(const std::string& name) {
    return "test_tmp_" + name;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

}  // namespace

TEST_CASE("load_matrix reads tab and comma layouts") {
    auto path = temp_path("m1.tsv");
    write_file(path, "1\t2\t3\n4\t5\t6\n");
    auto x = load_matrix(path);
    CHECK(x.n() == 2);
    CHECK(x.m() == 3);
    CHECK(x.values(1, 2) == 6.0);

    write_file(path, "1.5,2.5\n-3,4e2\n");
    auto y = load_matrix(path);
    CHECK(y.m() == 2);
    CHECK(y.values(1, 1) == 400.0);
    std::remove(path.c_str());
}

TEST_CASE("load_matrix reports the offending cell") {
    auto path = temp_path("m2.tsv");
    write_file(path, "1\t2\n3\tfour\n");
    CHECK_THROWS_WITH_AS(load_matrix(path), doctest::Contains("line 2"), std::runtime_error);

    write_file(path, "1\t2\n3\n");
    CHECK_THROWS_AS(load_matrix(path), std::runtime_error);
    std::remove(path.c_str());
}

TEST_CASE("matrix save and load round-trip") {
    DataMatrix x;
    x.values = Matrix(2, 2);
    x.values(0, 0) = 0.1;
    x.values(0, 1) = -7.25;
    x.values(1, 0) = 1e-9;
    x.values(1, 1) = 12345.678;
    auto path = temp_path("m3.tsv");
    save_matrix(x, path);
    auto back = load_matrix(path);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(back.values(i, j) == x.values(i, j));
    std::remove(path.c_str());
}

TEST_CASE("labels save and load round-trip") {
    LabelVector labels = {1, 2, 2, 3, 1};
    auto path = temp_path("l1.tsv");
    save_labels(labels, path);
    CHECK(load_labels(path) == labels);
    std::remove(path.c_str());
}

TEST_CASE("log_normalize maps decades to integers and rejects negatives") {
    DataMatrix x;
    x.values = Matrix(1, 3);
    x.values(0, 0) = 0.0;
    x.values(0, 1) = 9.0;
    x.values(0, 2) = 99.0;
    auto y = log_normalize(x);
    CHECK(y.values(0, 0) == doctest::Approx(0.0));
    CHECK(y.values(0, 1) == doctest::Approx(1.0));
    CHECK(y.values(0, 2) == doctest::Approx(2.0));

    x.values(0, 1) = -0.5;
    CHECK_THROWS_WITH_AS(log_normalize(x), doctest::Contains("row 1, column 2"),
                         std::runtime_error);
}

TEST_CASE("log_normalize is monotone entrywise") {
    DataMatrix x;
    x.values = Matrix(1, 4);
    x.values(0, 0) = 0.0;
    x.values(0, 1) = 0.5;
    x.values(0, 2) = 5.0;
    x.values(0, 3) = 50.0;
    auto y = log_normalize(x);
    for (std::size_t j = 1; j < 4; ++j) CHECK(y.values(0, j) > y.values(0, j - 1));
}

TEST_CASE("swiss roll splits points evenly with labels 1 2 3") {
    SwissRollSpec spec;
    spec.n_points = 723;
    spec.seed = 1;
    auto roll = generate_tripartite_swiss_roll(spec);
    CHECK(roll.points.n() == 723);
    CHECK(roll.points.m() == 3);
    int counts[4] = {0, 0, 0, 0};
    for (int l : roll.labels) {
        REQUIRE(l >= 1);
        REQUIRE(l <= 3);
        ++counts[l];
    }
    CHECK(counts[1] == 241);
    CHECK(counts[2] == 241);
    CHECK(counts[3] == 241);
    for (std::size_t i = 0; i < roll.points.n(); ++i) {
        for (std::size_t j = 0; j < 3; ++j) CHECK(std::isfinite(roll.points.values(i, j)));
    }
}

TEST_CASE("swiss roll is deterministic per seed") {
    SwissRollSpec spec;
    spec.n_points = 6;
    spec.seed = 7;
    spec.gap_fraction = 0.1;
    auto a = generate_tripartite_swiss_roll(spec);
    auto b = generate_tripartite_swiss_roll(spec);
    CHECK(a.points.values == b.points.values);
    CHECK(a.labels == b.labels);
    spec.seed = 8;
    auto c = generate_tripartite_swiss_roll(spec);
    CHECK(a.points.values != c.points.values);
}

TEST_CASE("swiss roll sections are separated in the roll parameter") {
    SwissRollSpec spec;
    spec.n_points = 300;
    spec.seed = 3;
    spec.gap_fraction = 0.05;
    auto roll = generate_tripartite_swiss_roll(spec);
    const double range = 3.0 * std::acos(-1.0);  // parameter interval length
    const double min_gap = spec.gap_fraction * range;
    for (std::size_t i = 0; i < roll.labels.size(); ++i) {
        for (std::size_t j = i + 1; j < roll.labels.size(); ++j) {
            if (roll.labels[i] == roll.labels[j]) continue;
            CHECK(std::fabs(roll.roll_parameter[i] - roll.roll_parameter[j]) >=
                  min_gap - 1e-12);
        }
    }
}

TEST_CASE("swiss roll validates its spec") {
    SwissRollSpec spec;
    spec.n_points = 7;
    CHECK_THROWS_AS(generate_tripartite_swiss_roll(spec), std::invalid_argument);
    spec.n_points = 6;
    spec.gap_fraction = 0.5;
    CHECK_THROWS_AS(generate_tripartite_swiss_roll(spec), std::invalid_argument);
    spec.gap_fraction = 0.05;
    spec.height = 0.0;
    CHECK_THROWS_AS(generate_tripartite_swiss_roll(spec), std::invalid_argument);
}

TEST_CASE("subsample_per_class draws evenly and deterministically") {
    DataMatrix x;
    x.values = Matrix(10, 1);
    LabelVector labels;
    for (std::size_t i = 0; i < 10; ++i) {
        x.values(i, 0) = static_cast<double>(i);
        labels.push_back(i < 6 ? 1 : 2);
    }
    auto [sx, sl] = subsample_per_class(x, labels, 3, 42);
    CHECK(sx.n() == 6);
    int ones = 0;
    for (int l : sl) ones += l == 1;
    CHECK(ones == 3);

    auto [sx2, sl2] = subsample_per_class(x, labels, 3, 42);
    CHECK(sx.values == sx2.values);
    CHECK(sl == sl2);

    CHECK_THROWS_WITH_AS(subsample_per_class(x, labels, 5, 1), doctest::Contains("class 2"),
                         std::runtime_error);
}

TEST_CASE("subsample returns whole classes when asked for everything") {
    DataMatrix x;
    x.values = Matrix(4, 1);
    for (std::size_t i = 0; i < 4; ++i) x.values(i, 0) = static_cast<double>(i);
    LabelVector labels = {1, 1, 2, 2};
    auto [sx, sl] = subsample_per_class(x, labels, 2, 9);
    CHECK(sx.n() == 4);
    std::multiset<double> values;
    for (std::size_t i = 0; i < 4; ++i) values.insert(sx.values(i, 0));
    CHECK(values == std::multiset<double>({0.0, 1.0, 2.0, 3.0}));
}
