#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpml {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// I/O failure (missing file, unreadable path). CLI maps this to exit code 1.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input data (bad index, bad token); message carries the line number.
struct format_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid configuration or usage. CLI maps this to exit code 2.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerical failure inside an optimizer.
struct divergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline double pos(double x) { return x > 0.0 ? x : 0.0; }

inline double sq(double x) { return x * x; }

/// Sparse vector over sample indices, kept sorted by index. Missing = 0.
using SparseVec = std::vector<std::pair<int, double>>;

inline double sparse_get(const SparseVec& v, int i) {
    for (const auto& [idx, val] : v)
        if (idx == i) return val;
    return 0.0;
}

}  // namespace gpml
