// Copyright 2026 The cachesched Authors
// SPDX-License-Identifier: Apache-2.0

#include "cachesched/plot_export.hpp"

#include <fstream>

#include "cachesched/errors.hpp"
#include "cachesched/format.hpp"

namespace cachesched {

namespace {

std::string optional_cell(const std::optional<double>& v) {
    return v ? format_number(*v) : std::string();
}

}  // namespace

std::string schedule_csv(const CacheSchedule& schedule) {
    if (schedule.main_decisions.empty()) {
        throw ValidationError("schedule export: schedule has no steps");
    }
    schedule.validate();
    std::string out = "step,main_decision,cfg_decision,main_acc,cfg_acc\n";
    for (std::size_t t = 0; t < schedule.num_steps(); ++t) {
        out += std::to_string(t);
        out += ',';
        out += to_string(schedule.main_decisions[t]);
        out += ',';
        if (schedule.cfg_enabled) out += to_string(schedule.cfg_decisions[t]);
        out += ',' + format_number(schedule.main_accumulator[t]) + ',';
        if (schedule.cfg_enabled) out += format_number(schedule.cfg_accumulator[t]);
        out += '\n';
    }
    return out;
}

std::string fit_eval_csv(const std::vector<FitEvalRow>& rows) {
    if (rows.empty()) {
        throw ValidationError("fit export: no rows");
    }
    std::string out = "t,x,y,y_hat_multi,y_hat_uni\n";
    for (const auto& r : rows) {
        out += std::to_string(r.t) + ',' + format_number(r.x) + ',' + format_number(r.y) + ',' +
               optional_cell(r.y_hat_multi) + ',' + optional_cell(r.y_hat_uni) + '\n';
    }
    return out;
}

std::string cv_csv(const std::vector<CvRow>& rows) {
    if (rows.empty()) {
        throw ValidationError("cv export: no rows");
    }
    std::string out = "step,mean,std,cv\n";
    for (const auto& r : rows) {
        out += std::to_string(r.step) + ',' + format_number(r.mean) + ',' +
               format_number(r.stddev) + ',' + optional_cell(r.cv) + '\n';
    }
    return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << content;
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

}  // namespace cachesched
