#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mcmcl/matrix.hpp"
#include "mcmcl/partition.hpp"

namespace mcmcl {

// Samples are rows, features are columns.
struct DataMatrix {
    Matrix values;

    std::size_t n() const { return values.rows(); }
    std::size_t m() const { return values.cols(); }
};

// Delimited numeric text. delimiter '\0' means detect: tab if the first
// line contains one, comma otherwise.
DataMatrix load_matrix(const std::string& path, bool has_header = false,
                       char delimiter = '\0');

// One integer label per line.
LabelVector load_labels(const std::string& path);

void save_matrix(const DataMatrix& x, const std::string& path, char delimiter = '\t');
void save_labels(const LabelVector& labels, const std::string& path);

// Entrywise log10(1 + x). Rejects negative entries.
DataMatrix log_normalize(const DataMatrix& x);

struct SwissRollSpec {
    std::size_t n_points = 723;
    std::uint64_t seed = 1;
    double gap_fraction = 0.05;  // share of the roll parameter range removed per gap
    // h ranges over [0, height]. Tall enough that distance-based linear
    // methods split by height instead of recovering the arms.
    double height = 36.0;
};

struct SwissRoll {
    DataMatrix points;                  // n x 3
    LabelVector labels;                 // 1..3, one section each
    std::vector<double> roll_parameter; // the t value drawn per point
};

// Points (t cos t, h, t sin t) with t in [1.5*pi, 4.5*pi] split into three
// equal intervals separated by gaps, h uniform in [0, height].
SwissRoll generate_tripartite_swiss_roll(const SwissRollSpec& spec);

struct Subsample {
    DataMatrix data;
    LabelVector labels;
};

// Draws per_class samples from every class without replacement.
Subsample subsample_per_class(const DataMatrix& x, const LabelVector& labels,
                              std::size_t per_class, std::uint64_t seed);

}  // namespace mcmcl
