#pragma once

// Brute-force reference computations. Deliberately naive and independent of
// the library code paths they check.

#include "scientrank/rational.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

namespace oracle {

using scientrank::Rational;

/// Scan h upward; stop at the first h that fails.
inline std::int64_t h_index(const std::vector<std::int64_t>& c) {
    std::int64_t best = 0;
    for (std::int64_t h = 0; h <= static_cast<std::int64_t>(c.size()); ++h) {
        std::int64_t at_least = 0;
        for (auto v : c) at_least += v >= h;
        if (at_least >= h) best = h;
    }
    return best;
}

struct Cutoff {
    std::int64_t c_star;
    std::int64_t n_above;
    std::int64_t n_at;
    Rational weight;
};

/// Tries every observed value as the cutoff and keeps the one satisfying
/// n_above < p*N <= n_above + n_at.
inline std::optional<Cutoff> cutoff(const std::vector<std::int64_t>& c, const Rational& p) {
    const Rational target = p * static_cast<std::int64_t>(c.size());
    std::optional<Cutoff> found;
    for (auto candidate : c) {
        std::int64_t above = 0, at = 0;
        for (auto v : c) {
            above += v > candidate;
            at += v == candidate;
        }
        if (above < target && target <= above + at) {
            Cutoff k{candidate, above, at, (target - above) / at};
            if (found && found->c_star != k.c_star) return std::nullopt;  // not unique
            found = k;
        }
    }
    return found;
}

/// 1 + number of strictly greater values.
inline std::vector<std::int64_t> competition_ranks(const std::vector<Rational>& v) {
    std::vector<std::int64_t> out;
    for (const auto& x : v) {
        std::int64_t greater = 0;
        for (const auto& y : v) greater += y > x;
        out.push_back(greater + 1);
    }
    return out;
}

/// Kendall tau-b by explicit pair classification.
inline double tau_b(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    double conc = 0, disc = 0, untied_a = 0, untied_b = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (i >= j) continue;
            double da = static_cast<double>(a[i] - a[j]);
            double db = static_cast<double>(b[i] - b[j]);
            if (da != 0) untied_a += 1;
            if (db != 0) untied_b += 1;
            if (da * db > 0) conc += 1;
            if (da * db < 0) disc += 1;
        }
    }
    return (conc - disc) / std::sqrt(untied_a * untied_b);
}

/// Average 1-based position of each value among the sorted values.
inline std::vector<double> mid_ranks(const std::vector<std::int64_t>& v) {
    std::vector<double> out;
    for (auto x : v) {
        double less = 0, equal = 0;
        for (auto y : v) {
            less += y < x;
            equal += y == x;
        }
        out.push_back(less + (equal + 1) / 2);
    }
    return out;
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    double n = static_cast<double>(x.size()), sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        syy += y[i] * y[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
}

}  // namespace oracle
