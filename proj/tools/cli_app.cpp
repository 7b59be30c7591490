// Copyright 2026 The cachesched Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli_app.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cachesched/analysis.hpp"
#include "cachesched/cache_scheduler.hpp"
#include "cachesched/cfg_freq.hpp"
#include "cachesched/errors.hpp"
#include "cachesched/format.hpp"
#include "cachesched/pca_threshold.hpp"
#include "cachesched/plot_export.hpp"
#include "cachesched/poly_fit.hpp"
#include "cachesched/presets.hpp"
#include "cachesched/synth.hpp"
#include "cachesched/trace_model.hpp"

namespace cachesched::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------------------
// helpers

/// A file holding a JSON array (or an object with "values"/"embedding"), or an
/// inline comma-separated list.
std::vector<double> read_vector_arg(const std::string& arg, const char* what) {
    if (fs::exists(arg)) {
        const json j = read_json_file(arg);
        const json* arr = &j;
        if (j.is_object()) {
            if (j.contains("values")) {
                arr = &j["values"];
            } else if (j.contains("embedding")) {
                arr = &j["embedding"];
            }
        }
        if (!arr->is_array()) {
            throw SchemaError(std::string(what) + ": '" + arg + "' does not hold a number array");
        }
        std::vector<double> out;
        for (const auto& v : *arr) {
            if (!v.is_number()) {
                throw SchemaError(std::string(what) + ": '" + arg + "' holds a non-number");
            }
            out.push_back(v.get<double>());
        }
        return out;
    }
    std::vector<double> out;
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        const auto last = item.find_last_not_of(" \t");
        if (first == std::string::npos) {
            throw ConfigError(std::string(what) + ": empty element in '" + arg + "'");
        }
        const std::string token = item.substr(first, last - first + 1);
        double value = 0.0;
        const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
        if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
            throw ConfigError(std::string(what) + ": '" + arg +
                              "' is neither a file nor a comma-separated number list");
        }
        out.push_back(value);
    }
    if (out.empty()) {
        throw ConfigError(std::string(what) + ": no values given");
    }
    return out;
}

const TimestepTrace& select_trace(const std::vector<TimestepTrace>& traces,
                                  const std::string& prompt_id) {
    if (traces.empty()) {
        throw ValidationError("trace bundle holds no traces");
    }
    if (prompt_id.empty()) {
        return traces.front();
    }
    for (const auto& t : traces) {
        if (t.prompt_id == prompt_id) return t;
    }
    throw ValidationError("no trace with prompt_id '" + prompt_id + "'");
}

/// Threshold-related flags shared by score-prompt and simulate.
struct PcaFlags {
    std::string preset = "custom";
    std::optional<double> k;
    std::optional<double> delta_min;
    std::optional<double> delta_max;
    std::string orientation = "complex_low";
    double epsilon = 1e-6;

    void add_to(CLI::App& app) {
        app.add_option("--preset", preset, "Model preset: cogvideox15, hunyuanvideo, wan21, custom");
        app.add_option("--k", k, "Sigmoid stretch amplitude");
        app.add_option("--delta-min", delta_min, "Lower threshold bound");
        app.add_option("--delta-max", delta_max, "Upper threshold bound");
        app.add_option("--orientation", orientation, "complex_low or paper_literal");
        app.add_option("--epsilon", epsilon, "Denominator guard of the complexity coefficient");
    }

    PcaConfig resolve() const {
        const auto p = lookup_preset(preset);
        PcaConfig c;
        c.orientation = parse_orientation(orientation);
        c.epsilon = epsilon;
        auto pick = [&](const std::optional<double>& flag, std::optional<double> fallback,
                        const char* name) {
            if (flag) return *flag;
            if (fallback) return *fallback;
            throw ConfigError(std::string(name) + " is required without a model preset");
        };
        c.k = pick(k, p ? std::optional(p->k) : std::nullopt, "--k");
        c.delta_min = pick(delta_min, p ? std::optional(p->delta_min) : std::nullopt, "--delta-min");
        c.delta_max = pick(delta_max, p ? std::optional(p->delta_max) : std::nullopt, "--delta-max");
        c.validate();
        return c;
    }
};

/// Flags that produce the per-step estimate sequence for the main path.
struct EstimateFlags {
    std::string trace_path;
    std::string prompt;
    std::string model_path;
    std::string est_source = "model";
    std::string codebook_path;

    void add_to(CLI::App& app) {
        app.add_option("--trace", trace_path, "Trace bundle JSON")->required();
        app.add_option("--prompt", prompt, "prompt_id of the trace to use (default: first)");
        app.add_option("--model", model_path, "Fitted model JSON used to estimate output differences");
        app.add_option("--est-source", est_source, "model (predict from x) or recorded (use y)")
            ->check(CLI::IsMember({"model", "recorded"}));
        app.add_option("--codebook", codebook_path, "Codebook JSON for the dynamic CFG path");
    }

    StepEstimates build(bool main_cache_needed) const {
        const auto traces = load_trace_bundle(trace_path);
        const TimestepTrace& trace = select_trace(traces, prompt);
        StepEstimates est;
        if (est_source == "recorded") {
            if (!trace.y) {
                throw ValidationError("trace '" + trace.prompt_id + "' has no recorded y");
            }
            est.est_main = *trace.y;
        } else if (!model_path.empty()) {
            est.est_main = predict_trace(load_fit_model(model_path), trace);
        } else if (main_cache_needed) {
            throw ConfigError("--model is required for model-based estimates");
        } else {
            est.est_main.assign(trace.num_steps(), 0.0);
        }
        if (!codebook_path.empty()) {
            est.codebook = load_codebook(codebook_path);
        }
        return est;
    }
};

std::string schedule_summary(const CacheSchedule& s) {
    std::ostringstream os;
    os << "policy=" << to_string(s.policy) << " steps=" << s.num_steps()
       << " cfg=" << (s.cfg_enabled ? "on" : "off") << " delta_main=" << format_number(s.delta_main)
       << " delta_cfg=" << format_number(s.delta_cfg) << " computed_passes=" << s.computed_passes
       << " baseline_passes=" << s.baseline_passes << " speedup=" << format_number(s.speedup);
    return os.str();
}

// ---------------------------------------------------------------------------
// subcommands

struct Context {
    std::ostream& out;
    std::ostream& err;
};

struct FitCmd {
    std::string traces;
    std::string kind = "multivariate12";
    std::string out_path;
    double t_normalizer = 0.0;

    void add(CLI::App& app) {
        auto* sub = app.add_subcommand("fit", "Fit the input -> output-difference regression");
        sub->add_option("--traces", traces, "Trace bundle JSON")->required();
        sub->add_option("--kind", kind, "multivariate12 or univariate5")
            ->check(CLI::IsMember({"multivariate12", "univariate5"}));
        sub->add_option("--out", out_path, "Output model JSON")->required();
        sub->add_option("--t-normalizer", t_normalizer, "Timestep divisor (default T - 1)");
    }

    int run(Context& ctx) const {
        const auto ds = dataset_from_traces(load_trace_bundle(traces), t_normalizer);
        const auto model = fit(ds, parse_fit_kind(kind));
        save_fit_model(out_path, model);
        ctx.out << "fit kind=" << kind << " rows=" << ds.rows.size()
                << " t_normalizer=" << format_number(model.t_normalizer)
                << " mse=" << format_number(mse(model, ds)) << " out=" << out_path << '\n';
        return kExitOk;
    }
};

struct EvalFitCmd {
    std::string model;
    std::string model2;
    std::string traces;
    std::string prompt;
    std::string csv;

    void add(CLI::App& app) {
        auto* sub = app.add_subcommand("eval-fit", "Report fit MSE and export fit curves");
        sub->add_option("--model", model, "Model JSON")->required();
        sub->add_option("--model2", model2, "Second model JSON, typically the other kind");
        sub->add_option("--traces", traces, "Trace bundle JSON")->required();
        sub->add_option("--prompt", prompt, "prompt_id for the CSV curve (default: first)");
        sub->add_option("--csv", csv, "Write t,x,y,y_hat_multi,y_hat_uni here");
    }

    int run(Context& ctx) const {
        const auto bundle = load_trace_bundle(traces);
        std::vector<FitModel> models{load_fit_model(model)};
        if (!model2.empty()) models.push_back(load_fit_model(model2));
        const auto ds = dataset_from_traces(bundle);
        ctx.out << "eval-fit rows=" << ds.rows.size();
        for (const auto& m : models) {
            ctx.out << " mse_" << to_string(m.kind) << '=' << format_number(mse(m, ds));
        }
        ctx.out << '\n';
        if (!csv.empty()) {
            write_text_file(csv, fit_eval_csv(fit_eval_rows(select_trace(bundle, prompt), models)));
        }
        return kExitOk;
    }
};

struct ScorePromptCmd {
    std::string embedding;
    std::string bank;
    PcaFlags pca;

    void add(CLI::App& app) {
        auto* sub = app.add_subcommand("score-prompt", "Complexity score and adaptive threshold");
        sub->add_option("--embedding", embedding, "Embedding JSON file or inline list")->required();
        sub->add_option("--bank", bank, "Embedding bank JSON")->required();
        pca.add_to(*sub);
    }

    int run(Context& ctx) const {
        const auto config = pca.resolve();
        const auto score =
            score_prompt(read_vector_arg(embedding, "--embedding"), load_embedding_bank(bank), config);
        ctx.out << to_json(score).dump() << '\n';
        return kExitOk;
    }
};

struct BankStatsCmd {
    std::string bank;

    void add(CLI::App& app) {
        auto* sub = app.add_subcommand("bank-stats", "Pairwise distance statistics and silhouette");
        sub->add_option("--bank", bank, "Embedding bank JSON")->required();
    }

    int run(Context& ctx) const {
        const auto b = load_embedding_bank(bank);
        const auto stats = pairwise_distance_stats(b);
        const json j = {{"within_complex", stats.within_complex},
                        {"within_simple", stats.within_simple},
                        {"cross", stats.cross},
                        {"silhouette", bank_silhouette(b)}};
        ctx.out << j.dump() << '\n';
        return kExitOk;
    }
};

struct CodebookCmd {
    std::string traces;
    std::string out_path;

    void add(CLI::App& app) {
        auto* sub = app.add_subcommand("codebook", "Average per-step cond/uncond differences");
        sub->add_option("--traces", traces, "Trace bundle JSON")->required();
        sub->add_option("--out", out_path, "Output codebook JSON")->required();
    }

    int run(Context& ctx) const {
        const auto cb = build_codebook(load_trace_bundle(traces));
        save_codebook(out_path, cb);
        ctx.out << "codebook steps=" << cb.values.size() << " sources=" << cb.source_count
                << " out=" << out_path << '\n';
        return kExitOk;
    }
};

struct SimulateCmd {
    std::string policy = "prompttea";
    EstimateFlags est;
    PcaFlags pca;
    std::optional<double> delta_main;
    std::optional<double> delta_cfg;
    std::string embedding;
    std::string bank;
    bool cfg_flag = true;
    CLI::Option* cfg_opt = nullptr;
    std::string out_path;
    std::string csv;

    void add(CLI::App& app) {
        auto* sub = app.add_subcommand("simulate", "Simulate one caching policy over a trace");
        sub->add_option("--policy", policy, "teacache, pca_teacache, dyncfg_only, prompttea")
            ->check(CLI::IsMember({"teacache", "pca_teacache", "dyncfg_only", "prompttea"}));
        est.add_to(*sub);
        pca.add_to(*sub);
        sub->add_option("--delta-main", delta_main, "Main-path threshold; overrides the prompt score");
        sub->add_option("--delta-cfg", delta_cfg, "CFG-path threshold");
        sub->add_option("--embedding", embedding, "Prompt embedding used to derive delta-main");
        sub->add_option("--bank", bank, "Embedding bank used to derive delta-main");
        cfg_opt = sub->add_flag("--cfg,!--no-cfg", cfg_flag, "Force CFG on or off");
        sub->add_option("--out", out_path, "Output schedule JSON");
        sub->add_option("--csv", csv, "Output schedule CSV");
    }

    PolicyConfig resolve(Context&) const {
        const auto preset = lookup_preset(pca.preset);
        PolicyConfig config;
        config.policy = parse_policy(policy);
        config.cfg_enabled = preset ? preset->cfg_enabled : true;
        if (cfg_opt->count() > 0) config.cfg_enabled = cfg_flag;

        if (delta_main) {
            config.delta_main = *delta_main;
        } else if (!config.uses_main_cache()) {
            config.delta_main = 0.0;
        } else if (!embedding.empty() && !bank.empty()) {
            config.delta_main = score_prompt(read_vector_arg(embedding, "--embedding"),
                                             load_embedding_bank(bank), pca.resolve())
                                    .delta_pca;
        } else {
            throw ConfigError("main-path threshold needs --delta-main or --embedding with --bank");
        }

        if (delta_cfg) {
            config.delta_cfg = *delta_cfg;
        } else if (preset) {
            config.delta_cfg = preset->delta_cfg;
        } else if (config.uses_dynamic_cfg()) {
            throw ConfigError("--delta-cfg is required without a model preset");
        } else {
            config.delta_cfg = 0.0;
        }
        if (!config.cfg_enabled) config.delta_cfg = 0.0;
        return config;
    }

    int run(Context& ctx) const {
        const auto config = resolve(ctx);
        const auto schedule = simulate(config, est.build(config.uses_main_cache()));
        if (!out_path.empty()) save_schedule(out_path, schedule);
        if (!csv.empty()) write_text_file(csv, schedule_csv(schedule));
        ctx.out << schedule_summary(schedule) << '\n';
        return kExitOk;
    }
};

struct CompareCmd {
    std::string configs;
    EstimateFlags est;
    std::string out_path;

    void add(CLI::App& app) {
        auto* sub = app.add_subcommand("compare", "Ablation table over several policy configs");
        sub->add_option("--configs", configs, "Policy configs JSON")->required();
        est.add_to(*sub);
        sub->add_option("--out", out_path, "Output CSV (default: standard output)");
    }

    int run(Context& ctx) const {
        const auto cfgs = policy_configs_from_json(read_json_file(configs));
        bool needs_main = false;
        for (const auto& c : cfgs) needs_main = needs_main || c.uses_main_cache();
        const auto rows = compare_policies(cfgs, est.build(needs_main));
        const std::string table = comparison_csv(rows);
        int status = kExitOk;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (!rows[i].error.empty()) {
                ctx.err << "compare: row " << i << ": " << rows[i].error << '\n';
                status = kExitFailure;
            }
        }
        if (out_path.empty()) {
            ctx.out << table;
        } else {
            write_text_file(out_path, table);
            ctx.out << "compare rows=" << rows.size() << " out=" << out_path << '\n';
        }
        return status;
    }
};

struct AnalyzeCvCmd {
    std::string traces;
    std::string field = "y";
    std::string csv;
    bool factor_study = false;
    std::uint64_t seed = 0;
    std::size_t runs = 1;
    std::size_t samples = 50;

    void add(CLI::App& app) {
        auto* sub = app.add_subcommand("analyze-cv", "Coefficient-of-variation analysis");
        sub->add_option("--traces", traces, "Trace bundle JSON: per-step CV across prompts");
        sub->add_option("--field", field, "x, y or cfg_diff")
            ->check(CLI::IsMember({"x", "y", "cfg_diff"}));
        sub->add_option("--csv", csv, "Write step,mean,std,cv here");
        sub->add_flag("--factor-study", factor_study, "Run the synthetic two-factor study instead");
        sub->add_option("--seed", seed, "Seed of the first factor-study run");
        sub->add_option("--runs", runs, "Number of seeded factor-study runs");
        sub->add_option("--samples", samples, "Samples per factor");
    }

    int run(Context& ctx) const {
        if (factor_study) {
            std::size_t ordered = 0;
            for (std::size_t r = 0; r < runs; ++r) {
                const auto study = run_factor_study(seed + r, samples);
                ordered += study.cv_strong > study.cv_weak ? 1 : 0;
                if (runs == 1) {
                    ctx.out << "factor-study seed=" << seed + r
                            << " cv_strong=" << format_number(study.cv_strong)
                            << " cv_weak=" << format_number(study.cv_weak) << '\n';
                }
            }
            if (runs != 1) {
                ctx.out << "factor-study runs=" << runs << " strong_exceeds_weak=" << ordered << '\n';
            }
            return kExitOk;
        }
        if (traces.empty()) {
            throw ConfigError("analyze-cv needs --traces or --factor-study");
        }
        const auto rows = cv_by_step(load_trace_bundle(traces), parse_trace_field(field));
        double max_cv = 0.0;
        double sum_cv = 0.0;
        std::size_t valid = 0;
        for (const auto& r : rows) {
            if (!r.cv) continue;
            max_cv = std::max(max_cv, *r.cv);
            sum_cv += *r.cv;
            ++valid;
        }
        ctx.out << "analyze-cv field=" << field << " steps=" << rows.size()
                << " mean_cv=" << format_number(valid ? sum_cv / static_cast<double>(valid) : 0.0)
                << " max_cv=" << format_number(max_cv) << " degenerate=" << rows.size() - valid
                << '\n';
        if (!csv.empty()) write_text_file(csv, cv_csv(rows));
        return kExitOk;
    }
};

struct CfgFreqCmd {
    std::string cond;
    std::string uncond;
    double cutoff = kDefaultCutoffFraction;
    double beta = 0.5;
    long t0 = 25;
    long t = 10;

    void add(CLI::App& app) {
        auto* sub = app.add_subcommand("cfg-freq", "Frequency-split unconditional reconstruction");
        sub->add_option("--cond", cond, "Conditional output (file or inline list)")->required();
        sub->add_option("--uncond", uncond, "Unconditional output (file or inline list)")->required();
        sub->add_option("--cutoff", cutoff, "Low-band cutoff fraction in (0, 1)");
        sub->add_option("--beta", beta, "Weight of the de-prioritized band, in [0, 1]");
        sub->add_option("--t0", t0, "Stage boundary step");
        sub->add_option("--t", t, "Step at which the reconstruction is applied");
    }

    int run(Context& ctx) const {
        const auto c = read_vector_arg(cond, "--cond");
        const auto u = read_vector_arg(uncond, "--uncond");
        const auto delta = cfg_delta(c, u, cutoff);
        const FreqWeights weights{beta, t0};
        const auto rebuilt = reconstruct_uncond(c, delta, weights, t);
        auto norm = [](const Spectrum& s) {
            double sum = 0.0;
            for (const auto& v : s) sum += std::norm(v);
            return std::sqrt(sum);
        };
        double max_err = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            max_err = std::max(max_err, std::abs(rebuilt[i] - u[i]));
        }
        const json j = {{"n", c.size()},
                        {"cutoff", cutoff},
                        {"t", t},
                        {"w1", weights.low_weight(t)},
                        {"w2", weights.high_weight(t)},
                        {"delta_low_norm", norm(delta.low)},
                        {"delta_high_norm", norm(delta.high)},
                        {"reconstruction_max_abs_error", max_err}};
        ctx.out << j.dump() << '\n';
        return kExitOk;
    }
};

struct ExportPlotCmd {
    std::string kind;
    std::string in;
    std::string model;
    std::string model2;
    std::string traces;
    std::string prompt;
    std::string field = "y";
    std::string out_path;

    void add(CLI::App& app) {
        auto* sub = app.add_subcommand("export-plot", "Write plot-ready CSV");
        sub->add_option("--kind", kind, "schedule, fit or cv")
            ->required()
            ->check(CLI::IsMember({"schedule", "fit", "cv"}));
        sub->add_option("--in", in, "Schedule JSON (kind schedule)");
        sub->add_option("--model", model, "Model JSON (kind fit)");
        sub->add_option("--model2", model2, "Second model JSON (kind fit)");
        sub->add_option("--traces", traces, "Trace bundle JSON (kinds fit, cv)");
        sub->add_option("--prompt", prompt, "prompt_id (kind fit)");
        sub->add_option("--field", field, "x, y or cfg_diff (kind cv)")
            ->check(CLI::IsMember({"x", "y", "cfg_diff"}));
        sub->add_option("--out", out_path, "Output CSV")->required();
    }

    int run(Context& ctx) const {
        auto need = [](const std::string& v, const char* flag) {
            if (v.empty()) throw ConfigError(std::string("export-plot: ") + flag + " is required");
        };
        std::string csv;
        if (kind == "schedule") {
            need(in, "--in");
            csv = schedule_csv(load_schedule(in));
        } else if (kind == "fit") {
            need(model, "--model");
            need(traces, "--traces");
            std::vector<FitModel> models{load_fit_model(model)};
            if (!model2.empty()) models.push_back(load_fit_model(model2));
            const auto bundle = load_trace_bundle(traces);
            csv = fit_eval_csv(fit_eval_rows(select_trace(bundle, prompt), models));
        } else {
            need(traces, "--traces");
            csv = cv_csv(cv_by_step(load_trace_bundle(traces), parse_trace_field(field)));
        }
        write_text_file(out_path, csv);
        ctx.out << "export-plot kind=" << kind << " out=" << out_path << '\n';
        return kExitOk;
    }
};

struct SynthCmd {
    TraceSynthOptions traces;
    BankSynthOptions bank;
    bool no_y = false;
    bool no_cfg = false;
    std::string out_path;
    std::string bank_out;

    void add(CLI::App& app) {
        auto* sub = app.add_subcommand("synth", "Generate seeded example traces and banks");
        sub->add_option("--seed", traces.seed, "Random seed (default 0)");
        sub->add_option("--prompts", traces.prompts, "Number of traces");
        sub->add_option("--steps", traces.steps, "Steps per trace");
        sub->add_flag("--no-y", no_y, "Omit recorded output differences");
        sub->add_flag("--no-cfg-diff", no_cfg, "Omit cond/uncond differences");
        sub->add_option("--out", out_path, "Output trace bundle JSON");
        sub->add_option("--bank-out", bank_out, "Output embedding bank JSON");
        sub->add_option("--dim", bank.dim, "Embedding dimension");
        sub->add_option("--per-label", bank.per_label, "Bank entries per label");
    }

    int run(Context& ctx) const {
        if (out_path.empty() && bank_out.empty()) {
            throw ConfigError("synth: give --out and/or --bank-out");
        }
        if (!out_path.empty()) {
            TraceSynthOptions opts = traces;
            opts.with_output_diff = !no_y;
            opts.with_cfg_diff = !no_cfg;
            save_trace_bundle(out_path, synthesize_traces(opts));
            ctx.out << "synth traces=" << opts.prompts << " steps=" << opts.steps
                    << " seed=" << opts.seed << " out=" << out_path << '\n';
        }
        if (!bank_out.empty()) {
            BankSynthOptions opts = bank;
            opts.seed = traces.seed;
            save_embedding_bank(bank_out, synthesize_bank(opts));
            ctx.out << "synth bank dim=" << opts.dim << " per_label=" << opts.per_label
                    << " out=" << bank_out << '\n';
        }
        return kExitOk;
    }
};

}  // namespace

int run(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return run(args, std::cout, std::cerr);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Trace-driven cache-reuse scheduler for diffusion inference", "cachesched"};
    app.require_subcommand(1);

    FitCmd fit_cmd;
    EvalFitCmd eval_fit_cmd;
    ScorePromptCmd score_cmd;
    BankStatsCmd bank_stats_cmd;
    CodebookCmd codebook_cmd;
    SimulateCmd simulate_cmd;
    CompareCmd compare_cmd;
    AnalyzeCvCmd cv_cmd;
    CfgFreqCmd cfg_freq_cmd;
    ExportPlotCmd export_cmd;
    SynthCmd synth_cmd;
    fit_cmd.add(app);
    eval_fit_cmd.add(app);
    score_cmd.add(app);
    bank_stats_cmd.add(app);
    codebook_cmd.add(app);
    simulate_cmd.add(app);
    compare_cmd.add(app);
    cv_cmd.add(app);
    cfg_freq_cmd.add(app);
    export_cmd.add(app);
    synth_cmd.add(app);

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    for (const auto& a : args) argv.push_back(a.c_str());
    if (argv.empty()) argv.push_back("cachesched");

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
            app.exit(e, out, err);
            return kExitOk;
        }
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    Context ctx{out, err};
    const std::string name = app.get_subcommands().front()->get_name();
    try {
        if (name == "fit") return fit_cmd.run(ctx);
        if (name == "eval-fit") return eval_fit_cmd.run(ctx);
        if (name == "score-prompt") return score_cmd.run(ctx);
        if (name == "bank-stats") return bank_stats_cmd.run(ctx);
        if (name == "codebook") return codebook_cmd.run(ctx);
        if (name == "simulate") return simulate_cmd.run(ctx);
        if (name == "compare") return compare_cmd.run(ctx);
        if (name == "analyze-cv") return cv_cmd.run(ctx);
        if (name == "cfg-freq") return cfg_freq_cmd.run(ctx);
        if (name == "export-plot") return export_cmd.run(ctx);
        if (name == "synth") return synth_cmd.run(ctx);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    err << "error: unhandled subcommand '" << name << "'\n";
    return kExitUsage;
}

}  // namespace cachesched::cli
