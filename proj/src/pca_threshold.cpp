// Copyright 2026 The cachesched Authors
// SPDX-License-Identifier: Apache-2.0

#include "cachesched/pca_threshold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "cachesched/errors.hpp"

namespace cachesched {

namespace {

constexpr double kNormTolerance = 1e-12;
constexpr double kCancellationTolerance = 1e-15;

double euclidean(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

}  // namespace

std::string_view to_string(Orientation o) {
    return o == Orientation::ComplexLow ? "complex_low" : "paper_literal";
}

Orientation parse_orientation(std::string_view text) {
    if (text == "complex_low") return Orientation::ComplexLow;
    if (text == "paper_literal") return Orientation::PaperLiteral;
    throw ConfigError("unknown orientation '" + std::string(text) + "'");
}

void PcaConfig::validate() const {
    if (!(k > 0.0) || !std::isfinite(k)) {
        throw ConfigError("pca config: k must be positive");
    }
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw ConfigError("pca config: epsilon must be positive");
    }
    if (!(delta_min > 0.0) || !std::isfinite(delta_max) || delta_min > delta_max) {
        throw ConfigError("pca config: need 0 < delta_min <= delta_max");
    }
}

nlohmann::json to_json(const ComplexityScore& score) {
    return {{"sim_complex", score.sim_complex},
            {"sim_simple", score.sim_simple},
            {"R", score.r},
            {"S", score.s},
            {"delta_pca", score.delta_pca}};
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw DimensionError("cosine_similarity: length mismatch (" + std::to_string(a.size()) +
                             " vs " + std::to_string(b.size()) + ")");
    }
    double ab = 0.0;
    double aa = 0.0;
    double bb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ab += a[i] * b[i];
        aa += a[i] * a[i];
        bb += b[i] * b[i];
    }
    const double na = std::sqrt(aa);
    const double nb = std::sqrt(bb);
    if (!(na > kNormTolerance) || !(nb > kNormTolerance)) {
        throw DegenerateError("cosine_similarity: zero-norm vector");
    }
    return std::clamp(ab / (na * nb), -1.0, 1.0);
}

double bank_similarity(std::span<const double> embedding, const EmbeddingBank& bank,
                       PromptLabel label) {
    if (embedding.size() != bank.dim) {
        throw DimensionError("bank_similarity: embedding has dimension " +
                             std::to_string(embedding.size()) + ", bank has " +
                             std::to_string(bank.dim));
    }
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& e : bank.entries) {
        if (e.label != label) continue;
        sum += cosine_similarity(embedding, e.vector);
        ++n;
    }
    if (n == 0) {
        throw ValidationError("bank_similarity: bank has no '" + std::string(to_string(label)) +
                              "' entries");
    }
    return sum / static_cast<double>(n);
}

double complexity_coefficient(double sim_c, double sim_s, double epsilon) {
    if (!(epsilon > 0.0)) {
        throw DomainError("complexity_coefficient: epsilon must be positive");
    }
    const double denom = sim_c + sim_s + epsilon;
    if (std::abs(denom) < kCancellationTolerance) {
        throw DegenerateError("complexity_coefficient: similarities cancel in the denominator");
    }
    return sim_c / denom;
}

double sigmoid_stretch(double r, double k) {
    if (!(k > 0.0)) {
        throw DomainError("sigmoid_stretch: k must be positive");
    }
    return 1.0 / (1.0 + std::exp(-k * (r - 0.5)));
}

double fuse_threshold(double s, const PcaConfig& config) {
    if (!(s >= 0.0 && s <= 1.0)) {
        throw DomainError("fuse_threshold: S must lie in [0, 1]");
    }
    const double lo = config.delta_min;
    const double hi = config.delta_max;
    const double delta = config.orientation == Orientation::PaperLiteral
                             ? s * hi + (1.0 - s) * lo
                             : s * lo + (1.0 - s) * hi;
    return std::clamp(delta, lo, hi);
}

ComplexityScore score_prompt(std::span<const double> embedding, const EmbeddingBank& bank,
                             const PcaConfig& config) {
    config.validate();
    ComplexityScore score;
    score.sim_complex = bank_similarity(embedding, bank, PromptLabel::Complex);
    score.sim_simple = bank_similarity(embedding, bank, PromptLabel::Simple);
    score.r = complexity_coefficient(score.sim_complex, score.sim_simple, config.epsilon);
    score.s = sigmoid_stretch(score.r, config.k);
    score.delta_pca = fuse_threshold(score.s, config);
    return score;
}

DistanceStats pairwise_distance_stats(const EmbeddingBank& bank) {
    if (bank.count(PromptLabel::Complex) < 2 || bank.count(PromptLabel::Simple) < 2) {
        throw ValidationError("pairwise_distance_stats: needs at least two entries per label");
    }
    double sum_c = 0.0, sum_s = 0.0, sum_x = 0.0;
    std::size_t n_c = 0, n_s = 0, n_x = 0;
    const auto& es = bank.entries;
    for (std::size_t i = 0; i < es.size(); ++i) {
        for (std::size_t j = i + 1; j < es.size(); ++j) {
            const double d = euclidean(es[i].vector, es[j].vector);
            if (es[i].label != es[j].label) {
                sum_x += d;
                ++n_x;
            } else if (es[i].label == PromptLabel::Complex) {
                sum_c += d;
                ++n_c;
            } else {
                sum_s += d;
                ++n_s;
            }
        }
    }
    return {sum_c / static_cast<double>(n_c), sum_s / static_cast<double>(n_s),
            sum_x / static_cast<double>(n_x)};
}

double silhouette(const std::vector<std::vector<double>>& vectors, const std::vector<int>& labels) {
    const std::size_t n = vectors.size();
    if (labels.size() != n) {
        throw DimensionError("silhouette: one label per vector required");
    }
    std::map<int, std::size_t> sizes;
    for (int l : labels) ++sizes[l];
    if (sizes.size() < 2) {
        throw ValidationError("silhouette: needs at least two clusters");
    }
    if (n < 3) {
        throw ValidationError("silhouette: needs at least three points");
    }
    for (const auto& v : vectors) {
        if (v.size() != vectors.front().size()) {
            throw DimensionError("silhouette: vectors differ in dimension");
        }
    }

    std::map<int, std::size_t> index;
    for (const auto& [label, count] : sizes) {
        const std::size_t next = index.size();
        index[label] = next;
    }
    std::vector<std::size_t> cluster(n);
    std::vector<std::size_t> cluster_size(sizes.size());
    for (std::size_t i = 0; i < n; ++i) {
        cluster[i] = index[labels[i]];
        cluster_size[cluster[i]] = sizes[labels[i]];
    }

    double total = 0.0;
    std::vector<double> dist_sum(sizes.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (cluster_size[cluster[i]] == 1) continue;
        std::fill(dist_sum.begin(), dist_sum.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) dist_sum[cluster[j]] += euclidean(vectors[i], vectors[j]);
        }
        const double a = dist_sum[cluster[i]] / static_cast<double>(cluster_size[cluster[i]] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < dist_sum.size(); ++c) {
            if (c == cluster[i]) continue;
            b = std::min(b, dist_sum[c] / static_cast<double>(cluster_size[c]));
        }
        const double m = std::max(a, b);
        total += m > 0.0 ? (b - a) / m : 0.0;
    }
    return total / static_cast<double>(n);
}

double bank_silhouette(const EmbeddingBank& bank) {
    std::vector<std::vector<double>> vectors;
    std::vector<int> labels;
    for (const auto& e : bank.entries) {
        vectors.push_back(e.vector);
        labels.push_back(e.label == PromptLabel::Complex ? 0 : 1);
    }
    return silhouette(vectors, labels);
}

}  // namespace cachesched
