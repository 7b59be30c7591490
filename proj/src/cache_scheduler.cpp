// Copyright 2026 The cachesched Authors
// SPDX-License-Identifier: Apache-2.0

#include "cachesched/cache_scheduler.hpp"

#include <cmath>
#include <future>

#include "cachesched/errors.hpp"
#include "cachesched/format.hpp"

namespace cachesched {

bool exceeds_threshold(double accumulated, double delta) {
    return accumulated > delta * (1.0 + kTieTolerance);
}

bool PolicyConfig::uses_main_cache() const {
    return policy != Policy::DynCfgOnly;
}

bool PolicyConfig::uses_dynamic_cfg() const {
    return cfg_enabled && (policy == Policy::DynCfgOnly || policy == Policy::PromptTea);
}

void PolicyConfig::validate() const {
    if (uses_main_cache() && (!std::isfinite(delta_main) || !(delta_main > 0.0))) {
        throw ConfigError("policy " + std::string(to_string(policy)) +
                          ": delta_main must be finite and positive");
    }
    if (uses_dynamic_cfg() && (!std::isfinite(delta_cfg) || !(delta_cfg > 0.0))) {
        throw ConfigError("policy " + std::string(to_string(policy)) +
                          ": delta_cfg must be finite and positive");
    }
}

nlohmann::json to_json(const PolicyConfig& config) {
    return {{"policy", to_string(config.policy)},
            {"delta_main", config.delta_main},
            {"delta_cfg", config.delta_cfg},
            {"cfg_enabled", config.cfg_enabled}};
}

PolicyConfig policy_config_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("policy") || !j["policy"].is_string()) {
        throw SchemaError("policy config: needs a string 'policy'");
    }
    PolicyConfig c;
    c.policy = parse_policy(j["policy"].get<std::string>());
    auto read_number = [&](const char* key, double& out) {
        if (auto it = j.find(key); it != j.end()) {
            if (!it->is_number()) throw SchemaError(std::string("policy config: '") + key + "' must be a number");
            out = it->get<double>();
        }
    };
    read_number("delta_main", c.delta_main);
    read_number("delta_cfg", c.delta_cfg);
    if (auto it = j.find("cfg_enabled"); it != j.end()) {
        if (!it->is_boolean()) throw SchemaError("policy config: 'cfg_enabled' must be a boolean");
        c.cfg_enabled = it->get<bool>();
    }
    return c;
}

std::vector<PolicyConfig> policy_configs_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("schema_version") ||
        !j["schema_version"].is_number_integer() ||
        j["schema_version"].get<int>() != kSchemaVersion) {
        throw SchemaError("policy configs: missing or unsupported schema_version");
    }
    if (!j.contains("configs") || !j["configs"].is_array()) {
        throw SchemaError("policy configs: 'configs' must be an array");
    }
    std::vector<PolicyConfig> out;
    for (std::size_t i = 0; i < j["configs"].size(); ++i) {
        try {
            out.push_back(policy_config_from_json(j["configs"][i]));
        } catch (const Error& e) {
            throw SchemaError("policy configs: configs[" + std::to_string(i) + "]: " + e.what());
        }
    }
    return out;
}

void StepEstimates::validate() const {
    if (est_main.empty()) {
        throw ValidationError("step estimates: est_main is empty");
    }
    for (double v : est_main) {
        if (!std::isfinite(v) || v < 0.0) {
            throw ValidationError("step estimates: entries must be finite and >= 0");
        }
    }
    if (codebook) {
        codebook->validate();
        if (codebook->values.size() != est_main.size()) {
            throw DimensionError("step estimates: codebook has " +
                                 std::to_string(codebook->values.size()) + " steps, estimates have " +
                                 std::to_string(est_main.size()));
        }
    }
}

DiffCodebook build_codebook(const std::vector<TimestepTrace>& traces) {
    DiffCodebook cb;
    for (const auto& tr : traces) {
        if (!tr.cfg_diff) continue;
        const auto& diff = *tr.cfg_diff;
        if (cb.source_count == 0) {
            cb.values.assign(diff.size(), 0.0);
        } else if (diff.size() != cb.values.size()) {
            throw DimensionError("build_codebook: trace '" + tr.prompt_id + "' has " +
                                 std::to_string(diff.size()) + " steps, expected " +
                                 std::to_string(cb.values.size()));
        }
        for (std::size_t t = 0; t < diff.size(); ++t) cb.values[t] += diff[t];
        ++cb.source_count;
    }
    if (cb.source_count == 0) {
        throw ValidationError("build_codebook: no trace carries cfg_diff");
    }
    for (double& v : cb.values) v /= static_cast<double>(cb.source_count);
    cb.validate();
    return cb;
}

MainSimulation simulate_main(const std::vector<double>& est, double delta) {
    if (est.empty()) {
        throw ValidationError("simulate_main: empty estimate sequence");
    }
    if (!(delta > 0.0)) {
        throw ConfigError("simulate_main: threshold must be positive");
    }
    MainSimulation sim;
    sim.decisions.reserve(est.size());
    sim.accumulator.reserve(est.size());
    sim.decisions.push_back(MainDecision::Compute);
    sim.accumulator.push_back(0.0);
    double acc = 0.0;
    for (std::size_t t = 1; t < est.size(); ++t) {
        acc += est[t];
        sim.accumulator.push_back(acc);
        if (exceeds_threshold(acc, delta)) {
            sim.decisions.push_back(MainDecision::Compute);
            acc = 0.0;
        } else {
            sim.decisions.push_back(MainDecision::Reuse);
        }
    }
    return sim;
}

CfgSimulation simulate_cfg(const DiffCodebook& codebook, double delta_cfg,
                           const std::vector<MainDecision>& main_decisions) {
    const auto& values = codebook.values;
    if (values.size() != main_decisions.size()) {
        throw DimensionError("simulate_cfg: codebook has " + std::to_string(values.size()) +
                             " steps, main path has " + std::to_string(main_decisions.size()));
    }
    if (values.empty()) {
        throw ValidationError("simulate_cfg: empty codebook");
    }
    if (!(delta_cfg > 0.0)) {
        throw ConfigError("simulate_cfg: threshold must be positive");
    }
    CfgSimulation sim;
    sim.decisions.reserve(values.size());
    sim.accumulator.reserve(values.size());
    sim.decisions.push_back(main_decisions[0] == MainDecision::Compute ? CfgDecision::ComputeBoth
                                                                       : CfgDecision::Skipped);
    sim.accumulator.push_back(0.0);
    double acc = 0.0;
    for (std::size_t t = 1; t < values.size(); ++t) {
        acc += values[t];
        sim.accumulator.push_back(acc);
        if (main_decisions[t] == MainDecision::Reuse) {
            sim.decisions.push_back(CfgDecision::Skipped);
        } else if (exceeds_threshold(acc, delta_cfg)) {
            sim.decisions.push_back(CfgDecision::ComputeBoth);
            acc = 0.0;
        } else {
            sim.decisions.push_back(CfgDecision::ReuseUncond);
        }
    }
    return sim;
}

CacheSchedule simulate(const PolicyConfig& config, const StepEstimates& estimates) {
    config.validate();
    estimates.validate();
    if (config.uses_dynamic_cfg() && !estimates.codebook) {
        throw ConfigError("policy " + std::string(to_string(config.policy)) +
                          " with cfg enabled needs a codebook");
    }
    const std::size_t steps = estimates.est_main.size();

    CacheSchedule s;
    s.policy = config.policy;
    s.cfg_enabled = config.cfg_enabled;
    s.delta_main = config.delta_main;
    s.delta_cfg = config.delta_cfg;

    if (config.uses_main_cache()) {
        auto main = simulate_main(estimates.est_main, config.delta_main);
        s.main_decisions = std::move(main.decisions);
        s.main_accumulator = std::move(main.accumulator);
    } else {
        s.main_decisions.assign(steps, MainDecision::Compute);
        s.main_accumulator.assign(steps, 0.0);
    }

    if (config.uses_dynamic_cfg()) {
        auto cfg = simulate_cfg(*estimates.codebook, config.delta_cfg, s.main_decisions);
        s.cfg_decisions = std::move(cfg.decisions);
        s.cfg_accumulator = std::move(cfg.accumulator);
    } else if (config.cfg_enabled) {
        // Static CFG: every computed step runs both passes.
        for (auto d : s.main_decisions) {
            s.cfg_decisions.push_back(d == MainDecision::Compute ? CfgDecision::ComputeBoth
                                                                 : CfgDecision::Skipped);
        }
        s.cfg_accumulator.assign(steps, 0.0);
    }

    s.baseline_passes = static_cast<long>(steps) * (config.cfg_enabled ? 2 : 1);
    s.computed_passes = count_passes(s.main_decisions, s.cfg_decisions, config.cfg_enabled);
    s.speedup = static_cast<double>(s.baseline_passes) / static_cast<double>(s.computed_passes);
    s.validate();
    return s;
}

double ComparisonRow::reuse_ratio() const {
    if (!schedule) return 0.0;
    return 1.0 - static_cast<double>(schedule->computed_passes) /
                     static_cast<double>(schedule->baseline_passes);
}

std::vector<ComparisonRow> compare_policies(const std::vector<PolicyConfig>& configs,
                                            const StepEstimates& estimates) {
    if (configs.empty()) {
        throw ConfigError("compare_policies: no configurations given");
    }
    std::vector<std::future<ComparisonRow>> pending;
    pending.reserve(configs.size());
    for (const auto& config : configs) {
        pending.push_back(std::async(std::launch::async, [&config, &estimates] {
            ComparisonRow row{config, std::nullopt, {}};
            try {
                row.schedule = simulate(config, estimates);
            } catch (const Error& e) {
                row.error = e.what();
            }
            return row;
        }));
    }
    std::vector<ComparisonRow> rows;
    rows.reserve(configs.size());
    for (auto& f : pending) rows.push_back(f.get());
    return rows;
}

std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
    std::string out = "policy,delta_main,delta_cfg,computed_passes,speedup,reuse_ratio\n";
    for (const auto& row : rows) {
        out += to_string(row.config.policy);
        out += ',' + format_number(row.config.delta_main);
        out += ',' + format_number(row.config.delta_cfg);
        if (row.schedule) {
            out += ',' + std::to_string(row.schedule->computed_passes);
            out += ',' + format_number(row.schedule->speedup);
            out += ',' + format_number(row.reuse_ratio());
        } else {
            out += ",,,";
        }
        out += '\n';
    }
    return out;
}

}  // namespace cachesched
