#include "mcmcl/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace mcmcl {

namespace {

void check_lengths(const LabelVector& a, const LabelVector& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("label vectors differ in length");
    }
    if (a.empty()) {
        throw std::invalid_argument("label vectors are empty");
    }
}

std::vector<std::size_t> index_labels(const LabelVector& labels, std::size_t& distinct) {
    std::unordered_map<int, std::size_t> seen;
    std::vector<std::size_t> idx(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto [it, inserted] = seen.emplace(labels[i], seen.size());
        idx[i] = it->second;
        (void)inserted;
    }
    distinct = seen.size();
    return idx;
}

long long pairs_of(long long n) { return n * (n - 1) / 2; }

}  // namespace

ContingencyTable contingency_table(const LabelVector& a, const LabelVector& b) {
    check_lengths(a, b);
    ContingencyTable t;
    auto ra = index_labels(a, t.rows);
    auto rb = index_labels(b, t.cols);
    t.counts.assign(t.rows, std::vector<long long>(t.cols, 0));
    t.row_sums.assign(t.rows, 0);
    t.col_sums.assign(t.cols, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        ++t.counts[ra[i]][rb[i]];
        ++t.row_sums[ra[i]];
        ++t.col_sums[rb[i]];
    }
    t.total = static_cast<long long>(a.size());
    return t;
}

// Assignment on the negated counts, padded to a square so unmatched clusters
// on the larger side pair with zero-count dummies.
long long best_assignment_overlap(const ContingencyTable& table) {
    const std::size_t k = std::max(table.rows, table.cols);
    if (k == 0) return 0;
    const long long kInf = std::numeric_limits<long long>::max() / 4;
    std::vector<std::vector<long long>> cost(k + 1, std::vector<long long>(k + 1, 0));
    for (std::size_t r = 0; r < table.rows; ++r) {
        for (std::size_t c = 0; c < table.cols; ++c) {
            cost[r + 1][c + 1] = -table.counts[r][c];
        }
    }
    std::vector<long long> u(k + 1, 0), v(k + 1, 0);
    std::vector<std::size_t> match(k + 1, 0), way(k + 1, 0);
    for (std::size_t i = 1; i <= k; ++i) {
        match[0] = i;
        std::size_t j0 = 0;
        std::vector<long long> minv(k + 1, kInf);
        std::vector<char> used(k + 1, 0);
        do {
            used[j0] = 1;
            std::size_t i0 = match[j0];
            std::size_t j1 = 0;
            long long delta = kInf;
            for (std::size_t j = 1; j <= k; ++j) {
                if (used[j]) continue;
                long long cur = cost[i0][j] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= k; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            std::size_t j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    long long overlap = 0;
    for (std::size_t j = 1; j <= k; ++j) {
        std::size_t i = match[j];
        if (i >= 1 && i <= table.rows && j >= 1 && j <= table.cols) {
            overlap += table.counts[i - 1][j - 1];
        }
    }
    return overlap;
}

double accuracy(const LabelVector& truth, const LabelVector& pred) {
    auto table = contingency_table(truth, pred);
    return static_cast<double>(best_assignment_overlap(table)) /
           static_cast<double>(table.total);
}

double accuracy(const LabelVector& truth, const Partition& pred, int expected_clusters) {
    check_lengths(truth, pred.labels);
    if (pred.search_failed || pred.n_clusters != expected_clusters) return 0.0;
    return accuracy(truth, pred.labels);
}

double adjusted_rand_index(const LabelVector& a, const LabelVector& b) {
    auto t = contingency_table(a, b);
    long long index = 0;
    for (const auto& row : t.counts) {
        for (long long c : row) index += pairs_of(c);
    }
    long long sum_a = 0, sum_b = 0;
    for (long long c : t.row_sums) sum_a += pairs_of(c);
    for (long long c : t.col_sums) sum_b += pairs_of(c);
    const long long total_pairs = pairs_of(t.total);
    const bool degenerate = total_pairs == 0 ||
                            (sum_a == 0 && sum_b == 0) ||
                            (sum_a == total_pairs && sum_b == total_pairs);
    if (degenerate) {
        return canonicalize_labels(a) == canonicalize_labels(b) ? 1.0 : 0.0;
    }
    const long double expected =
        static_cast<long double>(sum_a) * static_cast<long double>(sum_b) / total_pairs;
    const long double max_index = (static_cast<long double>(sum_a) + sum_b) / 2.0L;
    return static_cast<double>((index - expected) / (max_index - expected));
}

double adjusted_rand_index(const LabelVector& truth, const Partition& pred) {
    return adjusted_rand_index(truth, pred.labels);
}

double normalized_mutual_information(const LabelVector& a, const LabelVector& b) {
    auto t = contingency_table(a, b);
    const double n = static_cast<double>(t.total);
    double ha = 0.0, hb = 0.0, info = 0.0;
    for (long long c : t.row_sums) {
        if (c > 0) ha -= (c / n) * std::log(c / n);
    }
    for (long long c : t.col_sums) {
        if (c > 0) hb -= (c / n) * std::log(c / n);
    }
    for (std::size_t r = 0; r < t.rows; ++r) {
        for (std::size_t c = 0; c < t.cols; ++c) {
            const long long joint = t.counts[r][c];
            if (joint == 0) continue;
            info += (joint / n) *
                    std::log(joint * n /
                             (static_cast<double>(t.row_sums[r]) * t.col_sums[c]));
        }
    }
    if (ha + hb <= 0.0) return 1.0;  // both sides a single cluster
    return std::clamp(2.0 * info / (ha + hb), 0.0, 1.0);
}

double normalized_mutual_information(const LabelVector& truth, const Partition& pred) {
    return normalized_mutual_information(truth, pred.labels);
}

namespace {

// Rank 1 for the largest value; equal values share a rank and the next
// distinct value takes the following integer.
std::vector<int> dense_ranks(const std::vector<double>& values) {
    std::vector<double> distinct(values);
    std::sort(distinct.begin(), distinct.end(), std::greater<double>());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<int> ranks(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        auto it = std::lower_bound(distinct.begin(), distinct.end(), values[i],
                                   std::greater<double>());
        ranks[i] = static_cast<int>(it - distinct.begin()) + 1;
    }
    return ranks;
}

}  // namespace

std::vector<EvaluationReport> mean_rank(std::vector<EvaluationReport> reports) {
    if (reports.size() < 2) {
        throw std::invalid_argument("mean_rank needs at least two reports");
    }
    std::vector<double> acc, ari, nmi;
    acc.reserve(reports.size());
    ari.reserve(reports.size());
    nmi.reserve(reports.size());
    for (const auto& r : reports) {
        acc.push_back(r.acc);
        ari.push_back(r.ari);
        nmi.push_back(r.nmi);
    }
    auto ra = dense_ranks(acc);
    auto ri = dense_ranks(ari);
    auto rn = dense_ranks(nmi);
    for (std::size_t i = 0; i < reports.size(); ++i) {
        reports[i].mean_rank = (ra[i] + ri[i] + rn[i]) / 3.0;
    }
    std::sort(reports.begin(), reports.end(),
              [](const EvaluationReport& x, const EvaluationReport& y) {
                  if (x.mean_rank != y.mean_rank) return x.mean_rank < y.mean_rank;
                  if (x.method != y.method) return x.method < y.method;
                  if (x.distance != y.distance) return x.distance < y.distance;
                  return x.normalization < y.normalization;
              });
    return reports;
}

}  // namespace mcmcl
