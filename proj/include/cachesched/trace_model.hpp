// Copyright 2026 The cachesched Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace cachesched {

inline constexpr int kSchemaVersion = 1;

/**
 * Per-prompt record of relative differences, one entry per denoising step.
 *
 * Steps are 0-based. Every sequence is stored exactly as the recorder wrote
 * it; recorders use the forward pairing diff(F_t, F_{t+1}). The scheduler
 * charges element t as the increment at step t and never charges element 0,
 * since step 0 is always computed.
 *
 * `y` and `cfg_diff` are optional: an absent sequence is not the same as a
 * sequence of zeros.
 */
struct TimestepTrace {
    std::string prompt_id;
    std::vector<double> x;                       ///< timestep-embedding relative L1
    std::optional<std::vector<double>> y;        ///< model-output relative L1
    std::optional<std::vector<double>> cfg_diff; ///< cond vs uncond relative L1

    std::size_t num_steps() const { return x.size(); }

    void validate() const;

    friend bool operator==(const TimestepTrace&, const TimestepTrace&) = default;
};

enum class PromptLabel { Complex, Simple };

std::string_view to_string(PromptLabel label);
PromptLabel parse_prompt_label(std::string_view text);

struct BankEntry {
    PromptLabel label;
    std::vector<double> vector;

    friend bool operator==(const BankEntry&, const BankEntry&) = default;
};

/// Reference prompt embeddings, labeled complex or simple.
struct EmbeddingBank {
    std::size_t dim = 0;
    std::vector<BankEntry> entries;

    std::size_t count(PromptLabel label) const;

    /// Checks shared dimension, non-zero norms and that both labels are present.
    void validate() const;

    friend bool operator==(const EmbeddingBank&, const EmbeddingBank&) = default;
};

enum class FitKind { Multivariate12, Univariate5 };

std::string_view to_string(FitKind kind);
FitKind parse_fit_kind(std::string_view text);
std::size_t coefficient_count(FitKind kind);

/// Fitted linear model over polynomial features of (x, t_raw / t_normalizer).
struct FitModel {
    FitKind kind = FitKind::Multivariate12;
    std::vector<double> coeffs;
    double t_normalizer = 1.0;

    void validate() const;

    friend bool operator==(const FitModel&, const FitModel&) = default;
};

/// Per-step mean of cond/uncond relative differences over a set of prompts.
struct DiffCodebook {
    std::vector<double> values;
    std::size_t source_count = 0;

    void validate() const;

    friend bool operator==(const DiffCodebook&, const DiffCodebook&) = default;
};

enum class MainDecision { Compute, Reuse };
enum class CfgDecision { ComputeBoth, ReuseUncond, Skipped };

std::string_view to_string(MainDecision d);
std::string_view to_string(CfgDecision d);
MainDecision parse_main_decision(std::string_view text);
CfgDecision parse_cfg_decision(std::string_view text);

enum class Policy { TeaCache, PcaTeaCache, DynCfgOnly, PromptTea };

std::string_view to_string(Policy p);
Policy parse_policy(std::string_view text);

/**
 * Output of one simulated run.
 *
 * When `cfg_enabled` is false the model runs a single pass per step and the
 * CFG sequences are empty. Accumulator entries hold the value that was
 * compared against the threshold at that step (before any reset), with 0 at
 * step 0.
 */
struct CacheSchedule {
    Policy policy = Policy::PromptTea;
    bool cfg_enabled = true;
    double delta_main = 0.0;
    double delta_cfg = 0.0;
    std::vector<MainDecision> main_decisions;
    std::vector<CfgDecision> cfg_decisions;
    std::vector<double> main_accumulator;
    std::vector<double> cfg_accumulator;
    long computed_passes = 0;
    long baseline_passes = 0;
    double speedup = 1.0;

    std::size_t num_steps() const { return main_decisions.size(); }

    /// Checks decision structure and that the pass counts and speedup agree with it.
    void validate() const;

    friend bool operator==(const CacheSchedule&, const CacheSchedule&) = default;
};

/// Forward passes the decision sequences cost: 2 per ComputeBoth, 1 per ReuseUncond,
/// and with CFG disabled 1 per Compute.
long count_passes(const std::vector<MainDecision>& main, const std::vector<CfgDecision>& cfg,
                  bool cfg_enabled);

// JSON conversion. from_json validates and throws SchemaError / ValidationError.
nlohmann::json to_json(const TimestepTrace& trace);
nlohmann::json trace_bundle_to_json(const std::vector<TimestepTrace>& traces);
std::vector<TimestepTrace> trace_bundle_from_json(const nlohmann::json& j);

nlohmann::json to_json(const EmbeddingBank& bank);
EmbeddingBank embedding_bank_from_json(const nlohmann::json& j);

nlohmann::json to_json(const FitModel& model);
FitModel fit_model_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DiffCodebook& codebook);
DiffCodebook codebook_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CacheSchedule& schedule);
CacheSchedule schedule_from_json(const nlohmann::json& j);

// File I/O. Output is pretty-printed with a trailing newline and is a pure
// function of the value.
nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

std::vector<TimestepTrace> load_trace_bundle(const std::filesystem::path& path);
void save_trace_bundle(const std::filesystem::path& path, const std::vector<TimestepTrace>& traces);

EmbeddingBank load_embedding_bank(const std::filesystem::path& path);
void save_embedding_bank(const std::filesystem::path& path, const EmbeddingBank& bank);

FitModel load_fit_model(const std::filesystem::path& path);
void save_fit_model(const std::filesystem::path& path, const FitModel& model);

DiffCodebook load_codebook(const std::filesystem::path& path);
void save_codebook(const std::filesystem::path& path, const DiffCodebook& codebook);

CacheSchedule load_schedule(const std::filesystem::path& path);
void save_schedule(const std::filesystem::path& path, const CacheSchedule& schedule);

}  // namespace cachesched
