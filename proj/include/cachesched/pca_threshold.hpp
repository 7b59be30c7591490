// Copyright 2026 The cachesched Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "cachesched/trace_model.hpp"

namespace cachesched {

/// Which bound a complex prompt receives.
enum class Orientation {
    PaperLiteral,  ///< delta = S * max + (1 - S) * min
    ComplexLow,    ///< delta = S * min + (1 - S) * max; complex prompts get the low threshold
};

std::string_view to_string(Orientation o);
Orientation parse_orientation(std::string_view text);

/// Prompt-complexity threshold parameters.
struct PcaConfig {
    double k = 50.0;  ///< sigmoid stretch amplitude
    double delta_min = 0.1;
    double delta_max = 0.23;
    double epsilon = 1e-6;
    Orientation orientation = Orientation::ComplexLow;

    void validate() const;
};

struct ComplexityScore {
    double sim_complex = 0.0;
    double sim_simple = 0.0;
    double r = 0.0;  ///< complexity coefficient
    double s = 0.0;  ///< stretched coefficient in (0, 1)
    double delta_pca = 0.0;
};

nlohmann::json to_json(const ComplexityScore& score);

/// a.b / (|a| |b|). Throws DegenerateError on a zero-norm argument.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

/// Mean cosine similarity of `embedding` against every bank entry with `label`.
double bank_similarity(std::span<const double> embedding, const EmbeddingBank& bank,
                       PromptLabel label);

/// R = sim_c / (sim_c + sim_s + eps).
double complexity_coefficient(double sim_c, double sim_s, double epsilon);

/// S = 1 / (1 + exp(-k (R - 0.5))).
double sigmoid_stretch(double r, double k);

/// Blends the threshold bounds by S according to the configured orientation.
double fuse_threshold(double s, const PcaConfig& config);

/// Full pipeline: bank similarities, complexity coefficient, stretch, fusion.
ComplexityScore score_prompt(std::span<const double> embedding, const EmbeddingBank& bank,
                             const PcaConfig& config);

struct DistanceStats {
    double within_complex = 0.0;
    double within_simple = 0.0;
    double cross = 0.0;
};

/// Mean Euclidean distance over unordered within-label pairs and over all
/// cross-label pairs. Needs two entries per label.
DistanceStats pairwise_distance_stats(const EmbeddingBank& bank);

/**
 * Mean silhouette coefficient with Euclidean distance.
 *
 * For each point, a is the mean distance to the rest of its own cluster and
 * b the smallest mean distance to another cluster; the point scores
 * (b - a) / max(a, b). Points in singleton clusters score 0.
 */
double silhouette(const std::vector<std::vector<double>>& vectors, const std::vector<int>& labels);

/// Silhouette of the bank's complex/simple split.
double bank_silhouette(const EmbeddingBank& bank);

}  // namespace cachesched
