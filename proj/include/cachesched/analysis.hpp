// Copyright 2026 The cachesched Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "cachesched/poly_fit.hpp"
#include "cachesched/trace_model.hpp"

namespace cachesched {

enum class TraceField { X, Y, CfgDiff };

TraceField parse_trace_field(std::string_view text);

struct CvRow {
    std::size_t step = 0;
    double mean = 0.0;
    double stddev = 0.0;
    std::optional<double> cv;  ///< empty when the mean is too close to zero
};

/// Coefficient of variation of one trace field across prompts, per step.
/// Traces lacking the field are ignored; the rest must agree on T.
std::vector<CvRow> cv_by_step(const std::vector<TimestepTrace>& traces, TraceField field);

struct FitEvalRow {
    std::size_t t = 0;
    double x = 0.0;
    double y = 0.0;
    std::optional<double> y_hat_multi;
    std::optional<double> y_hat_uni;
};

/// Recorded and predicted output differences along one trace. Each model is
/// optional and routed to its column by kind.
std::vector<FitEvalRow> fit_eval_rows(const TimestepTrace& trace,
                                      const std::vector<FitModel>& models);

}  // namespace cachesched
