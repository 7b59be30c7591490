// Copyright 2026 The cachesched Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cachesched/trace_model.hpp"

namespace cachesched {

// Seeded generators for example data and self-checks. Output depends only on
// the options, so the same seed always yields the same artifacts.

struct TraceSynthOptions {
    std::uint64_t seed = 0;
    std::size_t prompts = 100;
    std::size_t steps = 50;
    bool with_output_diff = true;
    bool with_cfg_diff = true;
};

/**
 * Traces shaped like recorded DiT runs: the timestep-embedding difference is
 * nearly prompt-independent and non-monotonic in t, while the output
 * difference decays sharply over the first steps and then rises slowly, scaled
 * by a per-prompt complexity factor. The same x value therefore maps to very
 * different y values at early and late steps.
 */
std::vector<TimestepTrace> synthesize_traces(const TraceSynthOptions& options);

struct BankSynthOptions {
    std::uint64_t seed = 0;
    std::size_t dim = 16;
    std::size_t per_label = 20;
    double spread = 0.15;  ///< per-coordinate noise around each label's centroid
};

/// Two noisy clusters around random complex/simple centroids.
EmbeddingBank synthesize_bank(const BankSynthOptions& options);

/// Output-difference samples from a two-factor generator where the first
/// factor (text) moves the output strongly and the second (seed) weakly.
struct FactorStudy {
    std::vector<double> vary_strong;  ///< text varied, seed fixed
    std::vector<double> vary_weak;    ///< seed varied, text fixed
    double cv_strong = 0.0;
    double cv_weak = 0.0;
};

FactorStudy run_factor_study(std::uint64_t seed, std::size_t samples = 50);

}  // namespace cachesched
