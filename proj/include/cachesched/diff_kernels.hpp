// Copyright 2026 The cachesched Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

namespace cachesched {

/// Absolute floor below which a norm or mean is treated as zero.
inline constexpr double kDenominatorTolerance = 1e-12;

/// ||current - next||_1 / ||next||_1.
/// Throws DimensionError on length mismatch, DegenerateError when ||next||_1 <= 1e-12.
double l1_rel(std::span<const double> current, std::span<const double> next);

/// l1_rel over each consecutive pair; the result has one entry fewer than the input.
std::vector<double> sequence_rel_diffs(const std::vector<std::vector<double>>& vectors);

/// Non-empty list of finite samples.
class SampleSet {
public:
    explicit SampleSet(std::vector<double> values);

    std::span<const double> values() const { return values_; }
    double mean() const;
    /// Population standard deviation.
    double stddev() const;

private:
    std::vector<double> values_;
};

/// Population standard deviation over mean. Throws DegenerateError when mean <= 1e-12.
double coefficient_of_variation(const SampleSet& samples);

}  // namespace cachesched
