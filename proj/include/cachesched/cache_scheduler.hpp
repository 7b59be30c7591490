// Copyright 2026 The cachesched Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cachesched/trace_model.hpp"

namespace cachesched {

/// Relative slack on the threshold comparison. An accumulator that equals the
/// threshold up to rounding of the running sum counts as a tie, and ties reuse.
inline constexpr double kTieTolerance = 1e-12;

/// True when `accumulated` strictly exceeds `delta` beyond the tie slack.
bool exceeds_threshold(double accumulated, double delta);

struct PolicyConfig {
    Policy policy = Policy::PromptTea;
    double delta_main = 0.2;  ///< threshold of the main accumulator
    double delta_cfg = 0.02;  ///< threshold of the codebook accumulator
    bool cfg_enabled = true;  ///< model runs cond + uncond passes per step

    /// Whether the main path accumulates estimates (false for dyncfg_only).
    bool uses_main_cache() const;
    /// Whether the CFG path is driven by the codebook.
    bool uses_dynamic_cfg() const;

    void validate() const;
};

nlohmann::json to_json(const PolicyConfig& config);
PolicyConfig policy_config_from_json(const nlohmann::json& j);
std::vector<PolicyConfig> policy_configs_from_json(const nlohmann::json& j);

/// Per-step estimated output differences, and the codebook when the CFG path is dynamic.
struct StepEstimates {
    std::vector<double> est_main;
    std::optional<DiffCodebook> codebook;

    void validate() const;
};

/// Mean per-step cfg_diff across traces.
DiffCodebook build_codebook(const std::vector<TimestepTrace>& traces);

struct MainSimulation {
    std::vector<MainDecision> decisions;
    std::vector<double> accumulator;
};

/**
 * Accumulate-and-refresh over estimated differences.
 *
 * Step 0 computes. Every later step adds est[t] to the accumulator; if the sum
 * exceeds `delta` the step computes and the accumulator resets to zero,
 * otherwise the cached output is reused. est[0] is never read.
 */
MainSimulation simulate_main(const std::vector<double>& est, double delta);

struct CfgSimulation {
    std::vector<CfgDecision> decisions;
    std::vector<double> accumulator;
};

/**
 * Same accumulate-and-refresh rule on codebook values for the unconditional
 * pass. Where the main path reuses, the whole step is skipped: the decision is
 * Skipped and the accumulator keeps growing without a reset.
 */
CfgSimulation simulate_cfg(const DiffCodebook& codebook, double delta_cfg,
                           const std::vector<MainDecision>& main_decisions);

/// Runs the configured policy and fills in the pass accounting.
CacheSchedule simulate(const PolicyConfig& config, const StepEstimates& estimates);

struct ComparisonRow {
    PolicyConfig config;
    std::optional<CacheSchedule> schedule;
    std::string error;  ///< set when simulate failed for this row

    /// Fraction of baseline forward passes avoided.
    double reuse_ratio() const;
};

/// One simulation per config. A failing row records its error; the rest still run.
std::vector<ComparisonRow> compare_policies(const std::vector<PolicyConfig>& configs,
                                            const StepEstimates& estimates);

/// CSV with header policy,delta_main,delta_cfg,computed_passes,speedup,reuse_ratio.
std::string comparison_csv(const std::vector<ComparisonRow>& rows);

}  // namespace cachesched
