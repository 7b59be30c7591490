// Copyright 2026 The cachesched Authors
// SPDX-License-Identifier: Apache-2.0

// Brute-force reference computations used by the unit and acceptance suites.
// Nothing here calls into the library's numerical code paths.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "cachesched/trace_model.hpp"

namespace cachesched::oracle {

/// x^i t^j evaluated by repeated multiplication.
inline double monomial(double x, int i, double t, int j) {
    double v = 1.0;
    for (int a = 0; a < i; ++a) v *= x;
    for (int b = 0; b < j; ++b) v *= t;
    return v;
}

/// The twelve fourth-order terms, spelled out as (power of x, power of t).
inline std::vector<double> features(double x, double t) {
    static const int powers[12][2] = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {0, 2}, {1, 1},
                                      {3, 0}, {0, 3}, {2, 1}, {1, 2}, {4, 0}, {0, 4}};
    std::vector<double> out;
    for (const auto& p : powers) out.push_back(monomial(x, p[0], t, p[1]));
    return out;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Direct-summation DFT in long double with unreduced angles.
inline std::vector<std::complex<double>> dft(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        long double re = 0.0L, im = 0.0L;
        for (std::size_t j = 0; j < n; ++j) {
            const long double angle = -2.0L * std::numbers::pi_v<long double> *
                                      static_cast<long double>(j) * static_cast<long double>(k) /
                                      static_cast<long double>(n);
            re += x[j] * std::cos(angle);
            im += x[j] * std::sin(angle);
        }
        out[k] = {static_cast<double>(re), static_cast<double>(im)};
    }
    return out;
}

inline double euclid(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

/// Textbook silhouette from a full distance matrix.
inline double silhouette(const std::vector<std::vector<double>>& pts, const std::vector<int>& lab) {
    const std::size_t n = pts.size();
    std::vector<std::vector<double>> d(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d[i][j] = euclid(pts[i], pts[j]);
    std::map<int, int> size;
    for (int l : lab) ++size[l];
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (size[lab[i]] == 1) continue;
        double a = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i && lab[j] == lab[i]) a += d[i][j];
        a /= size[lab[i]] - 1;
        double b = INFINITY;
        for (const auto& [other, count] : size) {
            if (other == lab[i]) continue;
            double m = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                if (lab[j] == other) m += d[i][j];
            b = std::min(b, m / count);
        }
        const double denom = std::max(a, b);
        total += denom == 0.0 ? 0.0 : (b - a) / denom;
    }
    return total / static_cast<double>(n);
}

/// Threshold test with the documented relative tie slack of 1e-12.
inline bool over(double sum, double delta) {
    return sum > delta + delta * 1e-12;
}

/// Left-to-right sum of v[from..to] inclusive.
inline double range_sum(const std::vector<double>& v, std::size_t from, std::size_t to) {
    double s = 0.0;
    for (std::size_t i = from; i <= to; ++i) s += v[i];
    return s;
}

/**
 * Checks the accumulate-and-refresh boundary on a decision sequence.
 *
 * `refresh[t]` marks steps where the accumulator was compared and reset,
 * `compared[t]` marks steps where a comparison took place at all (false for
 * steps skipped by a higher-priority path). Between consecutive refreshes
 * t_c < t_d, every compared step s in (t_c, t_d) must have sum(t_c+1..s) <= delta
 * and sum(t_c+1..t_d) must exceed delta. After the last refresh, every
 * compared step stays within delta. Returns a description of the first
 * violation.
 */
inline std::optional<std::string> check_boundary(const std::vector<double>& est, double delta,
                                                 const std::vector<bool>& refresh,
                                                 const std::vector<bool>& compared) {
    const std::size_t n = est.size();
    if (n == 0 || !refresh[0]) return "step 0 is not a refresh";
    std::size_t last = 0;
    for (std::size_t s = 1; s < n; ++s) {
        if (!compared[s]) continue;
        const double sum = range_sum(est, last + 1, s);
        if (refresh[s]) {
            if (!over(sum, delta)) {
                return "refresh at " + std::to_string(s) + " with partial sum within delta";
            }
            last = s;
        } else if (over(sum, delta)) {
            return "reuse at " + std::to_string(s) + " with partial sum over delta";
        }
    }
    return std::nullopt;
}

inline std::vector<bool> main_refresh(const std::vector<MainDecision>& d) {
    std::vector<bool> out;
    for (auto v : d) out.push_back(v == MainDecision::Compute);
    return out;
}

}  // namespace cachesched::oracle
