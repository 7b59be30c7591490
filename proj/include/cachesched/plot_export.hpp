// Copyright 2026 The cachesched Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cachesched/analysis.hpp"
#include "cachesched/trace_model.hpp"

namespace cachesched {

// CSV renderers with fixed headers. Numbers use shortest round-trip text and
// optional values render as empty cells.

/// step,main_decision,cfg_decision,main_acc,cfg_acc
std::string schedule_csv(const CacheSchedule& schedule);

/// t,x,y,y_hat_multi,y_hat_uni
std::string fit_eval_csv(const std::vector<FitEvalRow>& rows);

/// step,mean,std,cv
std::string cv_csv(const std::vector<CvRow>& rows);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace cachesched
