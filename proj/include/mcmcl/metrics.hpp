#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mcmcl/partition.hpp"

namespace mcmcl {

// Joint label counts between two partitions of the same points. Rows index
// the first argument's distinct labels in order of first appearance, columns
// the second's. The noise label is kept as an ordinary category.
struct ContingencyTable {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::vector<long long>> counts;
    std::vector<long long> row_sums;
    std::vector<long long> col_sums;
    long long total = 0;
};

ContingencyTable contingency_table(const LabelVector& a, const LabelVector& b);

// Largest total count achievable by a one-to-one matching of rows to columns.
long long best_assignment_overlap(const ContingencyTable& table);

// Fraction of points preserved by the best one-to-one relabeling of pred onto
// truth. The three-argument form applies the reporting convention: a partition
// that is failure-flagged or does not have expected_clusters clusters scores 0.
double accuracy(const LabelVector& truth, const LabelVector& pred);
double accuracy(const LabelVector& truth, const Partition& pred, int expected_clusters);

// Hubert-Arabie adjusted Rand index. The degenerate denominator (both sides
// all singletons, or both a single cluster) is defined as 1 for identical
// partitions and 0 otherwise.
double adjusted_rand_index(const LabelVector& a, const LabelVector& b);
double adjusted_rand_index(const LabelVector& truth, const Partition& pred);

// 2*I(A;B) / (H(A)+H(B)) with natural logs; two single-cluster partitions
// compare as 1.
double normalized_mutual_information(const LabelVector& a, const LabelVector& b);
double normalized_mutual_information(const LabelVector& truth, const Partition& pred);

struct EvaluationReport {
    std::string method;
    std::string distance;       // "eucl" or "corr"
    std::string normalization;  // "-" or "log"
    double acc = 0.0;
    double ari = 0.0;
    double nmi = 0.0;
    double mean_rank = 0.0;
    std::string status = "ok";
};

// Ranks the reports on each measure independently (rank 1 is best; equal
// values share a rank and the next distinct value gets the next integer),
// stores the mean of the three ranks, and returns the list sorted ascending
// by mean rank. Ties in the output order are broken by method name, then
// distance and normalization, for display only.
std::vector<EvaluationReport> mean_rank(std::vector<EvaluationReport> reports);

}  // namespace mcmcl
