// Copyright 2026 The cachesched Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "cachesched/trace_model.hpp"

namespace cachesched {

/// Fourth-order features of (x, t), in the order
/// [1, x, t, x^2, t^2, xt, x^3, t^3, x^2 t, x t^2, x^4, t^4].
std::array<double, 12> expand_features(double x, double t);

/// [1, x, x^2, x^3, x^4]; the timestep-blind baseline.
std::array<double, 5> expand_baseline(double x);

struct FitRow {
    double x = 0.0;
    std::size_t t_raw = 0;
    double y = 0.0;
};

/// Training pairs for the input -> output-difference regression.
struct FitDataset {
    std::vector<FitRow> rows;
    std::size_t num_steps = 1;  ///< declared T; every t_raw must be below it
    double t_normalizer = 1.0;

    void validate() const;
};

/// Default timestep divisor T - 1, so that t lies in [0, 1]. Returns 1 for T <= 1.
double default_t_normalizer(std::size_t num_steps);

/// Builds a dataset from every trace that carries recorded output differences.
/// Rows are (x[t], t, y[t]) for all steps. A non-positive `t_normalizer` selects
/// the default for the longest trace. Throws ValidationError if no trace has y.
FitDataset dataset_from_traces(const std::vector<TimestepTrace>& traces, double t_normalizer = 0.0);

/// Ordinary least squares on the expanded features. Rank-deficient problems
/// return the minimum-norm solution.
FitModel fit(const FitDataset& dataset, FitKind kind);

/// Estimated output difference at (x, t_raw), clamped below at zero.
double predict(const FitModel& model, double x, std::size_t t_raw);

/// Unclamped model value; used to check residual structure of a fit.
double predict_raw(const FitModel& model, double x, std::size_t t_raw);

/// Mean of (predict - y)^2 over the dataset rows.
double mse(const FitModel& model, const FitDataset& dataset);

/// predict() over a whole trace's x sequence.
std::vector<double> predict_trace(const FitModel& model, const TimestepTrace& trace);

}  // namespace cachesched
