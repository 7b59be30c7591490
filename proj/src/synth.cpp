// Copyright 2026 The cachesched Authors
// SPDX-License-Identifier: Apache-2.0

#include "cachesched/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "cachesched/diff_kernels.hpp"
#include "cachesched/errors.hpp"

namespace cachesched {

std::vector<TimestepTrace> synthesize_traces(const TraceSynthOptions& options) {
    if (options.steps == 0) {
        throw DomainError("synthesize_traces: steps must be positive");
    }
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> complexity(0.7, 1.3);
    std::normal_distribution<double> noise(0.0, 1.0);

    const double last = options.steps > 1 ? static_cast<double>(options.steps - 1) : 1.0;
    std::vector<TimestepTrace> traces;
    traces.reserve(options.prompts);
    for (std::size_t p = 0; p < options.prompts; ++p) {
        TimestepTrace tr;
        tr.prompt_id = "prompt_" + std::to_string(p);
        const double c = complexity(rng);
        std::vector<double> y;
        std::vector<double> cfg;
        for (std::size_t t = 0; t < options.steps; ++t) {
            const double u = static_cast<double>(t) / last;
            const double x = 0.009 + 0.012 * std::sin(std::numbers::pi * u) * std::sin(std::numbers::pi * u) +
                             0.0002 * noise(rng);
            tr.x.push_back(std::max(0.0, x));
            const double out = c * (0.6 * std::exp(-static_cast<double>(t) / 2.5) + 0.04 + 0.12 * u * u) +
                               0.004 * noise(rng);
            y.push_back(std::max(0.0, out));
            const double guide = 0.004 + 0.012 * u + 0.02 * std::exp(-static_cast<double>(t) / 4.0) +
                                 0.0005 * noise(rng);
            cfg.push_back(std::max(0.0, guide));
        }
        if (options.with_output_diff) tr.y = std::move(y);
        if (options.with_cfg_diff) tr.cfg_diff = std::move(cfg);
        traces.push_back(std::move(tr));
    }
    return traces;
}

EmbeddingBank synthesize_bank(const BankSynthOptions& options) {
    if (options.dim == 0 || options.per_label == 0) {
        throw DomainError("synthesize_bank: dim and per_label must be positive");
    }
    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    auto centroid = [&] {
        std::vector<double> v(options.dim);
        for (auto& e : v) e = normal(rng);
        return v;
    };
    const auto complex_c = centroid();
    const auto simple_c = centroid();

    EmbeddingBank bank;
    bank.dim = options.dim;
    for (auto label : {PromptLabel::Complex, PromptLabel::Simple}) {
        const auto& c = label == PromptLabel::Complex ? complex_c : simple_c;
        for (std::size_t i = 0; i < options.per_label; ++i) {
            BankEntry e{label, c};
            for (auto& v : e.vector) v += options.spread * normal(rng);
            bank.entries.push_back(std::move(e));
        }
    }
    bank.validate();
    return bank;
}

FactorStudy run_factor_study(std::uint64_t seed, std::size_t samples) {
    if (samples < 2) {
        throw DomainError("run_factor_study: needs at least two samples");
    }
    std::mt19937_64 rng(seed);
    std::lognormal_distribution<double> text_effect(0.0, 0.5);
    std::normal_distribution<double> seed_effect(0.0, 1.0);
    auto output_diff = [](double text, double noise) { return 0.1 * text * (1.0 + 0.03 * noise); };

    FactorStudy study;
    const double fixed_text = text_effect(rng);
    const double fixed_noise = seed_effect(rng);
    for (std::size_t i = 0; i < samples; ++i) {
        study.vary_strong.push_back(output_diff(text_effect(rng), fixed_noise));
        study.vary_weak.push_back(output_diff(fixed_text, seed_effect(rng)));
    }
    study.cv_strong = coefficient_of_variation(SampleSet(study.vary_strong));
    study.cv_weak = coefficient_of_variation(SampleSet(study.vary_weak));
    return study;
}

}  // namespace cachesched
