#pragma once

#include <cstddef>
#include <vector>

namespace mcmcl {

// Dense row-major matrix of doubles. Sized for desk-scale problems
// (a few thousand rows at most), so no view/expression machinery.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), v_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return v_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return v_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return v_[i * cols_ + j]; }

    double* row(std::size_t i) { return v_.data() + i * cols_; }
    const double* row(std::size_t i) const { return v_.data() + i * cols_; }

    std::vector<double>& data() { return v_; }
    const std::vector<double>& data() const { return v_; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> v_;
};

inline double max_entry(const Matrix& m) {
    double best = 0.0;
    bool first = true;
    for (double v : m.data()) {
        if (first || v > best) { best = v; first = false; }
    }
    return best;
}

}  // namespace mcmcl
