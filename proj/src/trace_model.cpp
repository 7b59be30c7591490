// Copyright 2026 The cachesched Authors
// SPDX-License-Identifier: Apache-2.0

#include "cachesched/trace_model.hpp"

#include <cmath>
#include <fstream>

#include "cachesched/errors.hpp"

namespace cachesched {

using nlohmann::json;

namespace {

constexpr double kNormTolerance = 1e-12;

const json& field(const json& obj, const char* key, const std::string& ctx) {
    if (!obj.is_object()) {
        throw SchemaError(ctx + ": expected a JSON object");
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw SchemaError(ctx + ": missing field '" + key + "'");
    }
    return *it;
}

double number(const json& j, const std::string& ctx) {
    if (!j.is_number()) {
        throw SchemaError(ctx + ": expected a number");
    }
    return j.get<double>();
}

long integer(const json& j, const std::string& ctx) {
    if (!j.is_number_integer()) {
        throw SchemaError(ctx + ": expected an integer");
    }
    return j.get<long>();
}

std::string string(const json& j, const std::string& ctx) {
    if (!j.is_string()) {
        throw SchemaError(ctx + ": expected a string");
    }
    return j.get<std::string>();
}

std::vector<double> number_array(const json& j, const std::string& ctx) {
    if (!j.is_array()) {
        throw SchemaError(ctx + ": expected an array of numbers");
    }
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(number(j[i], ctx + "[" + std::to_string(i) + "]"));
    }
    return out;
}

std::optional<std::vector<double>> optional_array(const json& obj, const char* key,
                                                  const std::string& ctx) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
        return std::nullopt;
    }
    return number_array(*it, ctx + "." + key);
}

void check_version(const json& j, const std::string& ctx) {
    const long version = integer(field(j, "schema_version", ctx), ctx + ".schema_version");
    if (version != kSchemaVersion) {
        throw SchemaError(ctx + ": unsupported schema_version " + std::to_string(version));
    }
}

json versioned() {
    json j = json::object();
    j["schema_version"] = kSchemaVersion;
    return j;
}

void check_non_negative(const std::vector<double>& values, const std::string& what) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]) || values[i] < 0.0) {
            throw ValidationError(what + "[" + std::to_string(i) + "] must be finite and >= 0");
        }
    }
}

json optional_to_json(const std::optional<std::vector<double>>& v) {
    return v ? json(*v) : json(nullptr);
}

}  // namespace

// ---------------------------------------------------------------------------
// enum names

std::string_view to_string(PromptLabel label) {
    return label == PromptLabel::Complex ? "complex" : "simple";
}

PromptLabel parse_prompt_label(std::string_view text) {
    if (text == "complex") return PromptLabel::Complex;
    if (text == "simple") return PromptLabel::Simple;
    throw SchemaError("unknown prompt label '" + std::string(text) + "'");
}

std::string_view to_string(FitKind kind) {
    return kind == FitKind::Multivariate12 ? "multivariate12" : "univariate5";
}

FitKind parse_fit_kind(std::string_view text) {
    if (text == "multivariate12") return FitKind::Multivariate12;
    if (text == "univariate5") return FitKind::Univariate5;
    throw SchemaError("unknown fit kind '" + std::string(text) + "'");
}

std::size_t coefficient_count(FitKind kind) {
    return kind == FitKind::Multivariate12 ? 12 : 5;
}

std::string_view to_string(MainDecision d) {
    return d == MainDecision::Compute ? "compute" : "reuse";
}

std::string_view to_string(CfgDecision d) {
    switch (d) {
        case CfgDecision::ComputeBoth: return "compute_both";
        case CfgDecision::ReuseUncond: return "reuse_uncond";
        case CfgDecision::Skipped: return "skipped";
    }
    return "?";
}

MainDecision parse_main_decision(std::string_view text) {
    if (text == "compute") return MainDecision::Compute;
    if (text == "reuse") return MainDecision::Reuse;
    throw SchemaError("unknown main decision '" + std::string(text) + "'");
}

CfgDecision parse_cfg_decision(std::string_view text) {
    if (text == "compute_both") return CfgDecision::ComputeBoth;
    if (text == "reuse_uncond") return CfgDecision::ReuseUncond;
    if (text == "skipped") return CfgDecision::Skipped;
    throw SchemaError("unknown cfg decision '" + std::string(text) + "'");
}

std::string_view to_string(Policy p) {
    switch (p) {
        case Policy::TeaCache: return "teacache";
        case Policy::PcaTeaCache: return "pca_teacache";
        case Policy::DynCfgOnly: return "dyncfg_only";
        case Policy::PromptTea: return "prompttea";
    }
    return "?";
}

Policy parse_policy(std::string_view text) {
    if (text == "teacache") return Policy::TeaCache;
    if (text == "pca_teacache") return Policy::PcaTeaCache;
    if (text == "dyncfg_only") return Policy::DynCfgOnly;
    if (text == "prompttea") return Policy::PromptTea;
    throw ConfigError("unknown policy '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// validation

void TimestepTrace::validate() const {
    const std::string ctx = "trace '" + prompt_id + "'";
    if (x.empty()) {
        throw ValidationError(ctx + ": x must hold at least one step");
    }
    check_non_negative(x, ctx + ": x");
    if (y) {
        if (y->size() != x.size()) {
            throw ValidationError(ctx + ": y has " + std::to_string(y->size()) +
                                  " steps but x has " + std::to_string(x.size()));
        }
        check_non_negative(*y, ctx + ": y");
    }
    if (cfg_diff) {
        if (cfg_diff->size() != x.size()) {
            throw ValidationError(ctx + ": cfg_diff has " + std::to_string(cfg_diff->size()) +
                                  " steps but x has " + std::to_string(x.size()));
        }
        check_non_negative(*cfg_diff, ctx + ": cfg_diff");
    }
}

std::size_t EmbeddingBank::count(PromptLabel label) const {
    std::size_t n = 0;
    for (const auto& e : entries) {
        n += e.label == label ? 1 : 0;
    }
    return n;
}

void EmbeddingBank::validate() const {
    if (dim == 0) {
        throw ValidationError("embedding bank: dim must be positive");
    }
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& v = entries[i].vector;
        const std::string ctx = "embedding bank: entries[" + std::to_string(i) + "]";
        if (v.size() != dim) {
            throw ValidationError(ctx + " has dimension " + std::to_string(v.size()) +
                                  ", expected " + std::to_string(dim));
        }
        double norm2 = 0.0;
        for (double value : v) {
            if (!std::isfinite(value)) {
                throw ValidationError(ctx + " holds a non-finite value");
            }
            norm2 += value * value;
        }
        if (std::sqrt(norm2) <= kNormTolerance) {
            throw ValidationError(ctx + " has zero norm");
        }
    }
    if (count(PromptLabel::Complex) == 0 || count(PromptLabel::Simple) == 0) {
        throw ValidationError("embedding bank: needs at least one complex and one simple entry");
    }
}

void FitModel::validate() const {
    if (coeffs.size() != coefficient_count(kind)) {
        throw ValidationError("fit model: kind " + std::string(to_string(kind)) + " needs " +
                              std::to_string(coefficient_count(kind)) + " coefficients, got " +
                              std::to_string(coeffs.size()));
    }
    for (double c : coeffs) {
        if (!std::isfinite(c)) {
            throw ValidationError("fit model: non-finite coefficient");
        }
    }
    if (!std::isfinite(t_normalizer) || t_normalizer <= 0.0) {
        throw ValidationError("fit model: t_normalizer must be finite and positive");
    }
}

void DiffCodebook::validate() const {
    if (values.empty()) {
        throw ValidationError("codebook: needs at least one step");
    }
    check_non_negative(values, "codebook: values");
    if (source_count == 0) {
        throw ValidationError("codebook: source_count must be positive");
    }
}

long count_passes(const std::vector<MainDecision>& main, const std::vector<CfgDecision>& cfg,
                  bool cfg_enabled) {
    long passes = 0;
    if (!cfg_enabled) {
        for (auto d : main) {
            passes += d == MainDecision::Compute ? 1 : 0;
        }
        return passes;
    }
    for (auto d : cfg) {
        if (d == CfgDecision::ComputeBoth) {
            passes += 2;
        } else if (d == CfgDecision::ReuseUncond) {
            passes += 1;
        }
    }
    return passes;
}

void CacheSchedule::validate() const {
    const std::size_t steps = main_decisions.size();
    if (steps == 0) {
        throw ValidationError("schedule: needs at least one step");
    }
    if (main_decisions[0] != MainDecision::Compute) {
        throw ValidationError("schedule: step 0 must be computed");
    }
    if (!std::isfinite(delta_main) || delta_main < 0.0 || !std::isfinite(delta_cfg) ||
        delta_cfg < 0.0) {
        throw ValidationError("schedule: thresholds must be finite and >= 0");
    }
    if (main_accumulator.size() != steps) {
        throw ValidationError("schedule: main_accumulator length differs from main_decisions");
    }
    check_non_negative(main_accumulator, "schedule: main_accumulator");
    if (cfg_enabled) {
        if (cfg_decisions.size() != steps || cfg_accumulator.size() != steps) {
            throw ValidationError("schedule: cfg sequences must have one entry per step");
        }
        check_non_negative(cfg_accumulator, "schedule: cfg_accumulator");
        for (std::size_t t = 0; t < steps; ++t) {
            const bool skipped = cfg_decisions[t] == CfgDecision::Skipped;
            const bool reused = main_decisions[t] == MainDecision::Reuse;
            if (skipped != reused) {
                throw ValidationError("schedule: step " + std::to_string(t) +
                                      ": cfg 'skipped' must coincide with main 'reuse'");
            }
        }
        if (cfg_decisions[0] != CfgDecision::ComputeBoth) {
            throw ValidationError("schedule: step 0 must compute both cfg passes");
        }
    } else if (!cfg_decisions.empty() || !cfg_accumulator.empty()) {
        throw ValidationError("schedule: cfg sequences must be empty when cfg is disabled");
    }
    const long expected_baseline = static_cast<long>(steps) * (cfg_enabled ? 2 : 1);
    if (baseline_passes != expected_baseline) {
        throw ValidationError("schedule: baseline_passes should be " +
                              std::to_string(expected_baseline));
    }
    const long expected_computed = count_passes(main_decisions, cfg_decisions, cfg_enabled);
    if (computed_passes != expected_computed) {
        throw ValidationError("schedule: computed_passes should be " +
                              std::to_string(expected_computed));
    }
    const double expected_speedup =
        static_cast<double>(baseline_passes) / static_cast<double>(computed_passes);
    if (!std::isfinite(speedup) || speedup < 1.0 ||
        std::abs(speedup - expected_speedup) > 1e-12 * expected_speedup) {
        throw ValidationError("schedule: speedup must equal baseline_passes / computed_passes");
    }
}

// ---------------------------------------------------------------------------
// JSON

json to_json(const TimestepTrace& trace) {
    json j = json::object();
    j["prompt_id"] = trace.prompt_id;
    j["x"] = trace.x;
    j["y"] = optional_to_json(trace.y);
    j["cfg_diff"] = optional_to_json(trace.cfg_diff);
    return j;
}

json trace_bundle_to_json(const std::vector<TimestepTrace>& traces) {
    json j = versioned();
    j["traces"] = json::array();
    for (const auto& t : traces) {
        j["traces"].push_back(to_json(t));
    }
    return j;
}

std::vector<TimestepTrace> trace_bundle_from_json(const json& j) {
    const std::string ctx = "trace bundle";
    check_version(j, ctx);
    const json& arr = field(j, "traces", ctx);
    if (!arr.is_array()) {
        throw SchemaError(ctx + ": 'traces' must be an array");
    }
    std::vector<TimestepTrace> traces;
    traces.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const json& rec = arr[i];
        std::string rctx = ctx + ": traces[" + std::to_string(i) + "]";
        TimestepTrace t;
        t.prompt_id = string(field(rec, "prompt_id", rctx), rctx + ".prompt_id");
        rctx += " (prompt_id '" + t.prompt_id + "')";
        t.x = number_array(field(rec, "x", rctx), rctx + ".x");
        t.y = optional_array(rec, "y", rctx);
        t.cfg_diff = optional_array(rec, "cfg_diff", rctx);
        t.validate();
        traces.push_back(std::move(t));
    }
    return traces;
}

json to_json(const EmbeddingBank& bank) {
    json j = versioned();
    j["dim"] = bank.dim;
    j["entries"] = json::array();
    for (const auto& e : bank.entries) {
        j["entries"].push_back({{"label", to_string(e.label)}, {"vector", e.vector}});
    }
    return j;
}

EmbeddingBank embedding_bank_from_json(const json& j) {
    const std::string ctx = "embedding bank";
    check_version(j, ctx);
    EmbeddingBank bank;
    const long dim = integer(field(j, "dim", ctx), ctx + ".dim");
    if (dim <= 0) {
        throw ValidationError(ctx + ": dim must be positive");
    }
    bank.dim = static_cast<std::size_t>(dim);
    const json& arr = field(j, "entries", ctx);
    if (!arr.is_array()) {
        throw SchemaError(ctx + ": 'entries' must be an array");
    }
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string ectx = ctx + ": entries[" + std::to_string(i) + "]";
        BankEntry e;
        try {
            e.label = parse_prompt_label(string(field(arr[i], "label", ectx), ectx + ".label"));
        } catch (const SchemaError& err) {
            throw SchemaError(ectx + ": " + err.what());
        }
        e.vector = number_array(field(arr[i], "vector", ectx), ectx + ".vector");
        bank.entries.push_back(std::move(e));
    }
    bank.validate();
    return bank;
}

json to_json(const FitModel& model) {
    json j = versioned();
    j["kind"] = to_string(model.kind);
    j["coeffs"] = model.coeffs;
    j["t_normalizer"] = model.t_normalizer;
    return j;
}

FitModel fit_model_from_json(const json& j) {
    const std::string ctx = "fit model";
    check_version(j, ctx);
    FitModel m;
    m.kind = parse_fit_kind(string(field(j, "kind", ctx), ctx + ".kind"));
    m.coeffs = number_array(field(j, "coeffs", ctx), ctx + ".coeffs");
    if (m.coeffs.size() != coefficient_count(m.kind)) {
        throw SchemaError(ctx + ": kind " + std::string(to_string(m.kind)) + " needs " +
                          std::to_string(coefficient_count(m.kind)) + " coefficients, got " +
                          std::to_string(m.coeffs.size()));
    }
    m.t_normalizer = number(field(j, "t_normalizer", ctx), ctx + ".t_normalizer");
    m.validate();
    return m;
}

json to_json(const DiffCodebook& codebook) {
    json j = versioned();
    j["values"] = codebook.values;
    j["source_count"] = codebook.source_count;
    return j;
}

DiffCodebook codebook_from_json(const json& j) {
    const std::string ctx = "codebook";
    check_version(j, ctx);
    DiffCodebook cb;
    cb.values = number_array(field(j, "values", ctx), ctx + ".values");
    const long count = integer(field(j, "source_count", ctx), ctx + ".source_count");
    if (count <= 0) {
        throw ValidationError(ctx + ": source_count must be positive");
    }
    cb.source_count = static_cast<std::size_t>(count);
    cb.validate();
    return cb;
}

json to_json(const CacheSchedule& s) {
    json j = versioned();
    j["policy"] = to_string(s.policy);
    j["cfg_enabled"] = s.cfg_enabled;
    j["delta_main"] = s.delta_main;
    j["delta_cfg"] = s.delta_cfg;
    json main = json::array();
    for (auto d : s.main_decisions) main.push_back(to_string(d));
    json cfg = json::array();
    for (auto d : s.cfg_decisions) cfg.push_back(to_string(d));
    j["main_decisions"] = std::move(main);
    j["cfg_decisions"] = std::move(cfg);
    j["main_accumulator"] = s.main_accumulator;
    j["cfg_accumulator"] = s.cfg_accumulator;
    j["computed_passes"] = s.computed_passes;
    j["baseline_passes"] = s.baseline_passes;
    j["speedup"] = s.speedup;
    return j;
}

CacheSchedule schedule_from_json(const json& j) {
    const std::string ctx = "schedule";
    check_version(j, ctx);
    CacheSchedule s;
    try {
        s.policy = parse_policy(string(field(j, "policy", ctx), ctx + ".policy"));
    } catch (const ConfigError& err) {
        throw SchemaError(ctx + ": " + err.what());
    }
    const json& enabled = field(j, "cfg_enabled", ctx);
    if (!enabled.is_boolean()) {
        throw SchemaError(ctx + ".cfg_enabled: expected a boolean");
    }
    s.cfg_enabled = enabled.get<bool>();
    s.delta_main = number(field(j, "delta_main", ctx), ctx + ".delta_main");
    s.delta_cfg = number(field(j, "delta_cfg", ctx), ctx + ".delta_cfg");
    const json& main = field(j, "main_decisions", ctx);
    const json& cfg = field(j, "cfg_decisions", ctx);
    if (!main.is_array() || !cfg.is_array()) {
        throw SchemaError(ctx + ": decision sequences must be arrays");
    }
    for (const auto& d : main) {
        s.main_decisions.push_back(parse_main_decision(string(d, ctx + ".main_decisions")));
    }
    for (const auto& d : cfg) {
        s.cfg_decisions.push_back(parse_cfg_decision(string(d, ctx + ".cfg_decisions")));
    }
    s.main_accumulator = number_array(field(j, "main_accumulator", ctx), ctx + ".main_accumulator");
    s.cfg_accumulator = number_array(field(j, "cfg_accumulator", ctx), ctx + ".cfg_accumulator");
    s.computed_passes = integer(field(j, "computed_passes", ctx), ctx + ".computed_passes");
    s.baseline_passes = integer(field(j, "baseline_passes", ctx), ctx + ".baseline_passes");
    s.speedup = number(field(j, "speedup", ctx), ctx + ".speedup");
    s.validate();
    return s;
}

// ---------------------------------------------------------------------------
// files

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError(path.string() + ": invalid JSON: " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << j.dump(2) << '\n';
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

std::vector<TimestepTrace> load_trace_bundle(const std::filesystem::path& path) {
    return trace_bundle_from_json(read_json_file(path));
}

void save_trace_bundle(const std::filesystem::path& path, const std::vector<TimestepTrace>& traces) {
    for (const auto& t : traces) t.validate();
    write_json_file(path, trace_bundle_to_json(traces));
}

EmbeddingBank load_embedding_bank(const std::filesystem::path& path) {
    return embedding_bank_from_json(read_json_file(path));
}

void save_embedding_bank(const std::filesystem::path& path, const EmbeddingBank& bank) {
    bank.validate();
    write_json_file(path, to_json(bank));
}

FitModel load_fit_model(const std::filesystem::path& path) {
    return fit_model_from_json(read_json_file(path));
}

void save_fit_model(const std::filesystem::path& path, const FitModel& model) {
    model.validate();
    write_json_file(path, to_json(model));
}

DiffCodebook load_codebook(const std::filesystem::path& path) {
    return codebook_from_json(read_json_file(path));
}

void save_codebook(const std::filesystem::path& path, const DiffCodebook& codebook) {
    codebook.validate();
    write_json_file(path, to_json(codebook));
}

CacheSchedule load_schedule(const std::filesystem::path& path) {
    return schedule_from_json(read_json_file(path));
}

void save_schedule(const std::filesystem::path& path, const CacheSchedule& schedule) {
    schedule.validate();
    write_json_file(path, to_json(schedule));
}

}  // namespace cachesched
