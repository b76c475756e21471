#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "moaoff/error.hpp"

namespace moaoff {

inline double clip01(double x) {
    return std::clamp(x, 0.0, 1.0);
}

/// Percentile with linear interpolation between order statistics:
/// rank r = (p/100)*(n-1), result = x[floor(r)] + frac(r)*(x[floor(r)+1] - x[floor(r)]).
/// `sorted` must be ascending and non-empty; p in [0, 100].
inline double percentile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) {
        throw DomainError("percentile of empty sample");
    }
    const std::size_t n = sorted.size();
    if (n == 1) {
        return sorted[0];
    }
    const double rank = (p / 100.0) * static_cast<double>(n - 1);
    const auto lo = static_cast<std::size_t>(rank);
    if (lo + 1 >= n) {
        return sorted[n - 1];
    }
    const double frac = rank - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

inline double percentile(std::vector<double> values, double p) {
    std::sort(values.begin(), values.end());
    return percentile_sorted(values, p);
}

inline double mean_of(std::span<const double> values) {
    if (values.empty()) {
        return 0.0;
    }
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    return sum / static_cast<double>(values.size());
}

} // namespace moaoff
