// Copyright 2026 The cachesched Authors
// SPDX-License-Identifier: Apache-2.0

#include "cachesched/analysis.hpp"

#include <string>

#include "cachesched/diff_kernels.hpp"
#include "cachesched/errors.hpp"

namespace cachesched {

TraceField parse_trace_field(std::string_view text) {
    if (text == "x") return TraceField::X;
    if (text == "y") return TraceField::Y;
    if (text == "cfg_diff") return TraceField::CfgDiff;
    throw ConfigError("unknown trace field '" + std::string(text) + "' (expected x, y or cfg_diff)");
}

std::vector<CvRow> cv_by_step(const std::vector<TimestepTrace>& traces, TraceField field) {
    std::vector<const std::vector<double>*> series;
    for (const auto& tr : traces) {
        const std::vector<double>* s = nullptr;
        switch (field) {
            case TraceField::X: s = &tr.x; break;
            case TraceField::Y: s = tr.y ? &*tr.y : nullptr; break;
            case TraceField::CfgDiff: s = tr.cfg_diff ? &*tr.cfg_diff : nullptr; break;
        }
        if (!s) continue;
        if (!series.empty() && s->size() != series.front()->size()) {
            throw DimensionError("cv_by_step: trace '" + tr.prompt_id + "' has " +
                                 std::to_string(s->size()) + " steps, expected " +
                                 std::to_string(series.front()->size()));
        }
        series.push_back(s);
    }
    if (series.empty()) {
        throw ValidationError("cv_by_step: no trace carries the requested field");
    }
    std::vector<CvRow> rows;
    for (std::size_t t = 0; t < series.front()->size(); ++t) {
        std::vector<double> samples;
        samples.reserve(series.size());
        for (const auto* s : series) samples.push_back((*s)[t]);
        const SampleSet set(std::move(samples));
        CvRow row{t, set.mean(), set.stddev(), std::nullopt};
        try {
            row.cv = coefficient_of_variation(set);
        } catch (const DegenerateError&) {
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<FitEvalRow> fit_eval_rows(const TimestepTrace& trace,
                                      const std::vector<FitModel>& models) {
    if (!trace.y) {
        throw ValidationError("fit_eval_rows: trace '" + trace.prompt_id +
                              "' has no recorded output differences");
    }
    std::vector<FitEvalRow> rows;
    for (std::size_t t = 0; t < trace.num_steps(); ++t) {
        FitEvalRow row{t, trace.x[t], (*trace.y)[t], std::nullopt, std::nullopt};
        for (const auto& m : models) {
            const double value = predict(m, trace.x[t], t);
            (m.kind == FitKind::Multivariate12 ? row.y_hat_multi : row.y_hat_uni) = value;
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace cachesched
