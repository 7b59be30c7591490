// Copyright 2026 The cachesched Authors
// SPDX-License-Identifier: Apache-2.0

#include "cachesched/diff_kernels.hpp"

#include <cmath>
#include <string>

#include "cachesched/errors.hpp"

namespace cachesched {

double l1_rel(std::span<const double> current, std::span<const double> next) {
    if (current.size() != next.size()) {
        throw DimensionError("l1_rel: length mismatch (" + std::to_string(current.size()) +
                             " vs " + std::to_string(next.size()) + ")");
    }
    if (current.empty()) {
        throw DimensionError("l1_rel: vectors must not be empty");
    }
    double diff = 0.0;
    double norm = 0.0;
    for (std::size_t i = 0; i < current.size(); ++i) {
        diff += std::abs(current[i] - next[i]);
        norm += std::abs(next[i]);
    }
    if (!(norm > kDenominatorTolerance)) {
        throw DegenerateError("l1_rel: ||next||_1 is zero");
    }
    return diff / norm;
}

std::vector<double> sequence_rel_diffs(const std::vector<std::vector<double>>& vectors) {
    if (vectors.size() < 2) {
        throw DimensionError("sequence_rel_diffs: needs at least two vectors");
    }
    std::vector<double> out;
    out.reserve(vectors.size() - 1);
    for (std::size_t i = 0; i + 1 < vectors.size(); ++i) {
        try {
            out.push_back(l1_rel(vectors[i], vectors[i + 1]));
        } catch (const DimensionError& e) {
            throw DimensionError("sequence_rel_diffs: pair " + std::to_string(i) + ": " + e.what());
        } catch (const DegenerateError& e) {
            throw DegenerateError("sequence_rel_diffs: pair " + std::to_string(i) + ": " + e.what());
        }
    }
    return out;
}

SampleSet::SampleSet(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw DomainError("SampleSet: needs at least one value");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw DomainError("SampleSet: values must be finite");
        }
    }
}

double SampleSet::mean() const {
    double sum = 0.0;
    for (double v : values_) sum += v;
    return sum / static_cast<double>(values_.size());
}

double SampleSet::stddev() const {
    const double m = mean();
    double ss = 0.0;
    for (double v : values_) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(values_.size()));
}

double coefficient_of_variation(const SampleSet& samples) {
    const double m = samples.mean();
    if (!(m > kDenominatorTolerance)) {
        throw DegenerateError("coefficient_of_variation: mean is not positive");
    }
    return samples.stddev() / m;
}

}  // namespace cachesched
