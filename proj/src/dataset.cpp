#include "mcmcl/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "mcmcl/rng.hpp"

namespace mcmcl {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) nl = text.size();
        std::size_t end = nl;
        if (end > pos && text[end - 1] == '\r') --end;
        lines.emplace_back(text.substr(pos, end - pos));
        pos = nl + 1;
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

double parse_cell(const std::string& cell, std::size_t line_no, std::size_t col_no) {
    const char* begin = cell.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    bool bad = (end == begin) || (end != begin + cell.size());
    if (bad || !std::isfinite(v)) {
        throw std::runtime_error("line " + std::to_string(line_no) + ", column " +
                                 std::to_string(col_no) + ": cannot parse '" + cell + "'");
    }
    return v;
}

std::vector<std::string> split_fields(const std::string& line, char delimiter) {
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
        std::size_t d = line.find(delimiter, pos);
        if (d == std::string::npos) {
            fields.emplace_back(line.substr(pos));
            break;
        }
        fields.emplace_back(line.substr(pos, d - pos));
        pos = d + 1;
    }
    return fields;
}

}  // namespace

DataMatrix load_matrix(const std::string& path, bool has_header, char delimiter) {
    auto lines = split_lines(read_file(path));
    std::size_t first = has_header ? 1 : 0;
    if (lines.size() <= first) throw std::runtime_error("'" + path + "': no data rows");
    if (delimiter == '\0') {
        delimiter = lines[first].find('\t') != std::string::npos ? '\t' : ',';
    }

    std::size_t cols = split_fields(lines[first], delimiter).size();
    Matrix m(lines.size() - first, cols);
    for (std::size_t r = first; r < lines.size(); ++r) {
        auto fields = split_fields(lines[r], delimiter);
        if (fields.size() != cols) {
            throw std::runtime_error("line " + std::to_string(r + 1) + ": has " +
                                     std::to_string(fields.size()) + " columns, expected " +
                                     std::to_string(cols));
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m(r - first, c) = parse_cell(fields[c], r + 1, c + 1);
        }
    }
    return DataMatrix{std::move(m)};
}

LabelVector load_labels(const std::string& path) {
    auto lines = split_lines(read_file(path));
    if (lines.empty()) throw std::runtime_error("'" + path + "': no labels");
    LabelVector labels;
    labels.reserve(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) {
        double v = parse_cell(lines[i], i + 1, 1);
        long r = std::lround(v);
        if (static_cast<double>(r) != v) {
            throw std::runtime_error("line " + std::to_string(i + 1) +
                                     ": label '" + lines[i] + "' is not an integer");
        }
        labels.push_back(static_cast<int>(r));
    }
    return labels;
}

void save_matrix(const DataMatrix& x, const std::string& path, char delimiter) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    char buf[64];
    for (std::size_t i = 0; i < x.n(); ++i) {
        for (std::size_t j = 0; j < x.m(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", x.values(i, j));
            if (j) out << delimiter;
            out << buf;
        }
        out << '\n';
    }
}

void save_labels(const LabelVector& labels, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    for (int l : labels) out << l << '\n';
}

DataMatrix log_normalize(const DataMatrix& x) {
    Matrix m(x.n(), x.m());
    for (std::size_t i = 0; i < x.n(); ++i) {
        for (std::size_t j = 0; j < x.m(); ++j) {
            double v = x.values(i, j);
            if (v < 0.0) {
                throw std::runtime_error("negative entry at row " + std::to_string(i + 1) +
                                         ", column " + std::to_string(j + 1) +
                                         ": log normalization needs nonnegative data");
            }
            m(i, j) = std::log10(1.0 + v);
        }
    }
    return DataMatrix{std::move(m)};
}

SwissRoll generate_tripartite_swiss_roll(const SwissRollSpec& spec) {
    if (spec.n_points == 0 || spec.n_points % 3 != 0) {
        throw std::invalid_argument("point count must be a positive multiple of 3");
    }
    if (!(spec.gap_fraction > 0.0) || !(spec.gap_fraction < 0.2)) {
        throw std::invalid_argument("gap fraction must lie in (0, 0.2)");
    }
    if (!(spec.height > 0.0)) {
        throw std::invalid_argument("height must be positive");
    }

    const double t_lo = 1.5 * std::numbers::pi;
    const double t_hi = 4.5 * std::numbers::pi;
    const double h_hi = spec.height;
    const double range = t_hi - t_lo;
    const double gap = spec.gap_fraction * range;
    const double section = (range - 2.0 * gap) / 3.0;
    const std::size_t per = spec.n_points / 3;

    SwissRoll roll;
    roll.points.values = Matrix(spec.n_points, 3);
    roll.labels.reserve(spec.n_points);
    roll.roll_parameter.reserve(spec.n_points);

    Rng rng(spec.seed);
    std::size_t row = 0;
    for (int s = 0; s < 3; ++s) {
        double start = t_lo + s * (section + gap);
        for (std::size_t i = 0; i < per; ++i, ++row) {
            double t = start + section * rng.uniform();
            double h = h_hi * rng.uniform();
            roll.points.values(row, 0) = t * std::cos(t);
            roll.points.values(row, 1) = h;
            roll.points.values(row, 2) = t * std::sin(t);
            roll.labels.push_back(s + 1);
            roll.roll_parameter.push_back(t);
        }
    }
    return roll;
}

Subsample subsample_per_class(const DataMatrix& x, const LabelVector& labels,
                              std::size_t per_class, std::uint64_t seed) {
    if (per_class == 0) throw std::invalid_argument("per-class sample count must be positive");
    if (labels.size() != x.n()) throw std::invalid_argument("label count does not match rows");

    std::map<int, std::vector<std::size_t>> classes;
    for (std::size_t i = 0; i < labels.size(); ++i) classes[labels[i]].push_back(i);

    Rng rng(seed);
    std::vector<std::size_t> chosen;
    for (auto& [label, members] : classes) {
        if (members.size() < per_class) {
            throw std::runtime_error("class " + std::to_string(label) + " has only " +
                                     std::to_string(members.size()) + " samples, need " +
                                     std::to_string(per_class));
        }
        // partial Fisher-Yates, then restore ascending order of the picks
        for (std::size_t i = 0; i < per_class; ++i) {
            std::size_t j = i + rng.index(members.size() - i);
            std::swap(members[i], members[j]);
        }
        std::sort(members.begin(), members.begin() + static_cast<std::ptrdiff_t>(per_class));
        chosen.insert(chosen.end(), members.begin(),
                      members.begin() + static_cast<std::ptrdiff_t>(per_class));
    }

    Subsample out;
    out.data.values = Matrix(chosen.size(), x.m());
    out.labels.reserve(chosen.size());
    for (std::size_t r = 0; r < chosen.size(); ++r) {
        for (std::size_t c = 0; c < x.m(); ++c) out.data.values(r, c) = x.values(chosen[r], c);
        out.labels.push_back(labels[chosen[r]]);
    }
    return out;
}

}  // namespace mcmcl
