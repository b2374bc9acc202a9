#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mrcs/channelizer.hpp"
#include "mrcs/controllers.hpp"
#include "mrcs/errors.hpp"
#include "mrcs/filter_design.hpp"
#include "mrcs/mdp_model.hpp"
#include "mrcs/mdp_solver.hpp"
#include "mrcs/model_io.hpp"
#include "mrcs/policy_io.hpp"
#include "mrcs/report.hpp"
#include "mrcs/scenario.hpp"
#include "mrcs/sim.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace mrcs;

namespace {

struct CommonArgs {
    std::string config;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool no_transition_states = false;
    int actions = 0;  // 0 = leave config value
};

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string utc_now() {
    const std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

ScenarioConfig load_config(const CommonArgs& args) {
    ScenarioConfig cfg;
    if (!args.config.empty()) cfg = load_scenario(args.config);
    if (args.seed_set) cfg.seed = args.seed;
    if (args.no_transition_states) cfg.space.transition_states = false;
    if (args.actions) {
        cfg.space.num_actions = args.actions;
        cfg.space.validate();
    }
    return cfg;
}

std::string out_path(const CommonArgs& args, const std::string& name) {
    std::error_code ec;
    fs::create_directories(args.out_dir, ec);
    if (ec && !fs::is_directory(args.out_dir))
        throw IoError("cannot create output directory " + args.out_dir);
    return (fs::path(args.out_dir) / name).string();
}

void write_manifest(const CommonArgs& args, const std::string& command,
                    const ScenarioConfig& cfg, json extra) {
    json m;
    m["command"] = command;
    m["created_utc"] = utc_now();
    m["config_hash"] = fnv1a_hex(scenario_to_json_text(cfg));
    m["seed"] = cfg.seed;
    m["space"] = {{"num_channels", cfg.space.num_channels},
                  {"transition_states", cfg.space.transition_states},
                  {"num_actions", cfg.space.num_actions},
                  {"num_states", cfg.space.num_states()}};
    for (auto& [k, v] : extra.items()) m[k] = v;
    std::ofstream out(out_path(args, "manifest.json"));
    if (!out) throw IoError("manifest: cannot write manifest.json");
    out << m.dump(1, '\t') << "\n";
    if (!out) throw IoError("manifest: write failed");
}

json solver_stats(const SolveResult& r) {
    return {{"iterations", r.iterations},
            {"residual", r.residual},
            {"seconds", r.seconds},
            {"multiplies", r.multiplies}};
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

// ---------------------------------------------------------------- commands

int cmd_design_filter(const CommonArgs& args) {
    FilterSpec spec;
    if (!args.config.empty()) {
        std::ifstream in(args.config);
        if (!in) throw IoError("config: cannot open " + args.config);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception& e) {
            throw ConfigError(std::string("config: invalid JSON: ") + e.what());
        }
        const json f = j.value("filter", json::object());
        spec.num_channels = f.value("num_channels", spec.num_channels);
        spec.num_taps = f.value("num_taps", spec.num_taps);
        spec.passband_edge = f.value("passband_edge", spec.passband_edge);
        spec.stopband_edge = f.value("stopband_edge", spec.stopband_edge);
        spec.stopband_atten_db = f.value("stopband_atten_db", spec.stopband_atten_db);
        const std::string m = f.value("method", std::string("equiripple"));
        if (m == "equiripple")
            spec.method = DesignMethod::Equiripple;
        else if (m == "kaiser_window")
            spec.method = DesignMethod::KaiserWindow;
        else
            throw ConfigError("config: method must be equiripple or kaiser_window");
    }
    const FirFilter h = design_prototype(spec);
    save_coefficients(h.taps, out_path(args, "prototype.txt"));

    // Per-channel magnitude response: the prototype modulated to each channel
    // center, evaluated over the full normalized band [0, 1).
    const int M = spec.num_channels;
    const int npts = 2048;
    CsvTable t;
    t.schema = "mrcs-channel-response-v1";
    t.columns = {"freq_cyc_per_sample"};
    for (int m = 0; m < M; ++m) t.columns.push_back("ch" + std::to_string(m) + "_db");
    for (int k = 0; k < npts; ++k) {
        const double f = static_cast<double>(k) / npts;
        std::vector<std::string> row{fmt(f)};
        for (int m = 0; m < M; ++m) {
            std::complex<double> v = 0.0;
            for (size_t n = 0; n < h.taps.size(); ++n)
                v += h.taps[n] *
                     std::polar(1.0, -2.0 * std::numbers::pi *
                                         (f - static_cast<double>(m) / M) *
                                         static_cast<double>(n));
            row.push_back(fmt(20.0 * std::log10(std::max(std::abs(v), 1e-300))));
        }
        t.rows.push_back(std::move(row));
    }
    write_csv(t, out_path(args, "channel_response.csv"));

    ScenarioConfig cfg;  // manifest wants a hashable config; defaults are fine
    cfg.space.num_channels = spec.num_channels;
    write_manifest(args, "design-filter", cfg,
                   {{"artifacts",
                     {{"coefficients", out_path(args, "prototype.txt")},
                      {"response_csv", out_path(args, "channel_response.csv")}}},
                    {"num_taps", spec.num_taps},
                    {"measured_stopband_atten_db", measured_stopband_atten_db(h)},
                    {"measured_passband_ripple_db", measured_passband_ripple_db(h)}});
    return 0;
}

int cmd_build_model(const CommonArgs& args) {
    const ScenarioConfig cfg = load_config(args);
    const MdpModel model = build_scenario_model(cfg);
    save_model(model, out_path(args, "model.mmdl"));
    save_model_json(model, out_path(args, "model.json"));
    write_manifest(args, "build-model", cfg,
                   {{"artifacts",
                     {{"model", out_path(args, "model.mmdl")},
                      {"model_json", out_path(args, "model.json")}}},
                    {"elements",
                     {{"factored", model.element_count()},
                      {"dense", model.dense_element_count()}}}});
    return 0;
}

int cmd_solve(const CommonArgs& args) {
    const ScenarioConfig cfg = load_config(args);
    const MdpModel model = build_scenario_model(cfg);
    SolveResult res;
    try {
        res = solve(model, cfg.solver);
    } catch (const SolverError& e) {
        write_manifest(args, "solve", cfg,
                       {{"converged", false}, {"residual", e.last_residual}});
        throw;
    }
    PolicyTable p;
    p.actions = res.policy;
    p.gamma = cfg.solver.gamma;
    p.r1 = cfg.r1;
    p.fingerprint = fnv1a_hex(scenario_to_json_text(cfg));
    save_policy(p, out_path(args, "policy.mpol"));
    write_manifest(args, "solve", cfg,
                   {{"artifacts", {{"policy", out_path(args, "policy.mpol")}}},
                    {"converged", true},
                    {"solver", solver_stats(res)},
                    {"elements",
                     {{"factored", model.element_count()},
                      {"dense", model.dense_element_count()}}}});
    return 0;
}

int cmd_simulate(const CommonArgs& args) {
    const ScenarioConfig cfg = load_config(args);
    const MdpModel model = build_scenario_model(cfg);
    const SolveResult res = solve(model, cfg.solver);
    PolicyTable p;
    p.actions = res.policy;
    p.gamma = cfg.solver.gamma;
    p.r1 = cfg.r1;
    MdpController ctrl(p, cfg.space);
    const SimMetrics m = run_simulation(ctrl, cfg, true);

    CsvTable t;
    t.schema = "mrcs-metrics-v1";
    t.columns = {"controller", "success_rate", "avg_power_w",
                 "normalized_power_savings", "served", "requested", "frames"};
    t.rows.push_back({ctrl.name(), fmt(m.success_rate), fmt(m.avg_power),
                      fmt(m.normalized_power_savings), std::to_string(m.served),
                      std::to_string(m.requested), std::to_string(m.frames)});
    write_csv(t, out_path(args, "metrics.csv"));
    write_trace_csv(m.trace, cfg.space, out_path(args, "trace.csv"));
    write_manifest(args, "simulate", cfg,
                   {{"artifacts",
                     {{"metrics", out_path(args, "metrics.csv")},
                      {"trace", out_path(args, "trace.csv")}}},
                    {"solver", solver_stats(res)},
                    {"metrics",
                     {{"success_rate", m.success_rate},
                      {"avg_power_w", m.avg_power},
                      {"normalized_power_savings", m.normalized_power_savings}}}});
    return 0;
}

std::vector<double> mdp_r1_grid() {
    return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
}

ControllerFactory mdp_factory(double r1, std::string label) {
    return [r1, label](const ScenarioConfig& sc) -> std::unique_ptr<Controller> {
        ScenarioConfig weighted = sc;
        weighted.r1 = r1;
        const MdpModel model = build_scenario_model(weighted);
        const SolveResult res = solve(model, sc.solver);
        PolicyTable p;
        p.actions = res.policy;
        p.gamma = sc.solver.gamma;
        p.r1 = r1;
        return std::make_unique<MdpController>(p, sc.space, label);
    };
}

ControllerFactory mharp_factory(MharpConfig mc, std::string label) {
    return [mc, label](const ScenarioConfig& sc) -> std::unique_ptr<Controller> {
        return std::make_unique<MharpController>(mc, build_scenario_model(sc),
                                                 label);
    };
}

std::vector<ControllerFactory> baseline_factories() {
    std::vector<ControllerFactory> fs;
    fs.push_back([](const ScenarioConfig& sc) -> std::unique_ptr<Controller> {
        return std::make_unique<ManualDftfb>(sc.space);
    });
    fs.push_back([](const ScenarioConfig& sc) -> std::unique_ptr<Controller> {
        return std::make_unique<ManualDftfbSleep>(sc.space);
    });
    fs.push_back([](const ScenarioConfig& sc) -> std::unique_ptr<Controller> {
        return std::make_unique<ManualDcmSleep>(sc.space);
    });
    for (int th = 2; th <= 6; ++th)
        fs.push_back([th](const ScenarioConfig& sc) -> std::unique_ptr<Controller> {
            return std::make_unique<ManualCombo>(sc.space, th);
        });
    return fs;
}

std::string mdp_label(double r1) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "mdp-r1-%.1f", r1);
    return buf;
}

// Scenario family for robustness sweeps: beta grid for IID, dwell grid for SEQ.
std::vector<ScenarioConfig> scenario_family(const ScenarioConfig& base,
                                            std::vector<double>* param_out) {
    std::vector<ScenarioConfig> out;
    for (int i = 0; i < 10; ++i) {
        ScenarioConfig sc = base;
        if (base.use_case == UseCase::Iid) {
            sc.request.beta = 0.05 * (i + 1);
            param_out->push_back(sc.request.beta);
        } else {
            sc.seq.mean_dwell = 2.0 * (i + 1);
            param_out->push_back(sc.seq.mean_dwell);
        }
        out.push_back(sc);
    }
    return out;
}

int cmd_compare(const CommonArgs& args) {
    const ScenarioConfig base = load_config(args);

    // Pareto study on the base scenario: manual baselines, the r1-swept MDP
    // front, and the two mHARP tunings.
    std::vector<ControllerFactory> fs = baseline_factories();
    for (double r1 : mdp_r1_grid()) fs.push_back(mdp_factory(r1, mdp_label(r1)));
    fs.push_back(mharp_factory(MharpConfig::power_optimized(), "mharp-power"));
    fs.push_back(mharp_factory(MharpConfig::success_optimized(), "mharp-success"));

    std::vector<double> params;
    std::vector<ScenarioConfig> family = scenario_family(base, &params);
    std::vector<ScenarioConfig> scenarios{base};
    scenarios.insert(scenarios.end(), family.begin(), family.end());
    const std::vector<SweepRow> rows = sweep(fs, scenarios);

    const std::string pname =
        base.use_case == UseCase::Iid ? "beta" : "mean_dwell";
    CsvTable t;
    t.schema = "mrcs-compare-v1";
    t.columns = {"scenario", pname, "controller", "success_rate", "avg_power_w",
                 "normalized_power_savings"};
    for (const SweepRow& r : rows) {
        const double pv = r.scenario_index == 0
                              ? (base.use_case == UseCase::Iid ? base.request.beta
                                                               : base.seq.mean_dwell)
                              : params[r.scenario_index - 1];
        t.rows.push_back({r.scenario_index == 0
                              ? "base"
                              : "sweep" + std::to_string(r.scenario_index - 1),
                          fmt(pv), r.controller, fmt(r.metrics.success_rate),
                          fmt(r.metrics.avg_power),
                          fmt(r.metrics.normalized_power_savings)});
    }
    write_csv(t, out_path(args, "compare.csv"));

    // Pareto plot for the base scenario.
    SvgPlot pareto;
    pareto.title = "Policy comparison (base scenario)";
    pareto.x_label = "success rate";
    pareto.y_label = "normalized power savings";
    SvgSeries mdp{"mdp (r1 front)", "#d62728", true, {}};
    SvgSeries manual{"manual", "#1f77b4", false, {}};
    SvgSeries mharp{"mharp", "#2ca02c", false, {}};
    for (const SweepRow& r : rows) {
        if (r.scenario_index != 0) continue;
        const std::pair<double, double> pt{r.metrics.success_rate,
                                           r.metrics.normalized_power_savings};
        if (r.controller.rfind("mdp-", 0) == 0)
            mdp.points.push_back(pt);
        else if (r.controller.rfind("mharp", 0) == 0)
            mharp.points.push_back(pt);
        else
            manual.points.push_back(pt);
    }
    pareto.series = {manual, mharp, mdp};
    write_svg(pareto, out_path(args, "pareto.svg"));

    // Robustness plot: success rate across the sweep for the key controllers.
    SvgPlot robust;
    robust.title = "Success rate across scenarios";
    robust.x_label = pname;
    robust.y_label = "success rate";
    for (const auto& [label, color] :
         std::vector<std::pair<std::string, std::string>>{
             {"mdp-r1-0.9", "#d62728"},
             {"mharp-power", "#2ca02c"},
             {"mharp-success", "#9467bd"}}) {
        SvgSeries s{label, color, true, {}};
        for (const SweepRow& r : rows)
            if (r.scenario_index > 0 && r.controller == label)
                s.points.push_back(
                    {params[r.scenario_index - 1], r.metrics.success_rate});
        robust.series.push_back(std::move(s));
    }
    write_svg(robust, out_path(args, "robustness.svg"));

    write_manifest(args, "compare", base,
                   {{"artifacts",
                     {{"table", out_path(args, "compare.csv")},
                      {"pareto", out_path(args, "pareto.svg")},
                      {"robustness", out_path(args, "robustness.svg")}}},
                    {"num_rows", t.rows.size()}});
    return 0;
}

int cmd_transition_study(const CommonArgs& args) {
    const ScenarioConfig base = load_config(args);
    CsvTable t;
    t.schema = "mrcs-transition-study-v1";
    t.columns = {"delay_frames", "modeled",       "success_rate",
                 "avg_power_w",  "power_savings", "solve_seconds",
                 "iterations",   "factored_elements"};
    SvgSeries aware{"transition-aware", "#d62728", true, {}};
    SvgSeries unaware{"transition-unaware", "#1f77b4", true, {}};
    double modeled_secs = 0.0, unmodeled_secs = 0.0;

    for (int delay = 1; delay <= 5; ++delay) {
        for (const bool modeled : {true, false}) {
            ScenarioConfig sc = base;
            sc.trans_frames = delay;
            sc.space.transition_states = modeled;
            const MdpModel model = build_scenario_model(sc);
            const SolveResult res = solve(model, sc.solver);
            PolicyTable p;
            p.actions = res.policy;
            p.gamma = sc.solver.gamma;
            p.r1 = sc.r1;
            MdpController ctrl(p, sc.space,
                               modeled ? "mdp-aware" : "mdp-unaware");
            const SimMetrics m = run_simulation(ctrl, sc);
            (modeled ? modeled_secs : unmodeled_secs) += res.seconds;
            (modeled ? aware : unaware)
                .points.push_back({static_cast<double>(delay), m.success_rate});
            t.rows.push_back({std::to_string(delay), modeled ? "1" : "0",
                              fmt(m.success_rate), fmt(m.avg_power),
                              fmt(m.normalized_power_savings), fmt(res.seconds),
                              std::to_string(res.iterations),
                              std::to_string(model.element_count())});
        }
    }
    write_csv(t, out_path(args, "transition_study.csv"));

    SvgPlot plot;
    plot.title = "Success rate vs reconfiguration delay";
    plot.x_label = "delay (frames)";
    plot.y_label = "success rate";
    plot.series = {unaware, aware};
    write_svg(plot, out_path(args, "transition_study.svg"));

    write_manifest(args, "transition-study", base,
                   {{"artifacts",
                     {{"table", out_path(args, "transition_study.csv")},
                      {"plot", out_path(args, "transition_study.svg")}}},
                    {"solve_seconds",
                     {{"modeled", modeled_secs}, {"unmodeled", unmodeled_secs}}}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reconfigurable channelizer policy toolkit"};
    app.require_subcommand(1);

    CommonArgs args;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", args.config, "JSON configuration file");
        sub->add_option("--seed", args.seed, "Override the scenario seed")
            ->each([&](const std::string&) { args.seed_set = true; });
        sub->add_option("--out-dir", args.out_dir, "Output directory");
        sub->add_flag("--no-transition-states", args.no_transition_states,
                      "Model without transition states");
        sub->add_option("--actions", args.actions,
                        "Action count (11, or 13 with continue pseudo-actions)")
            ->check(CLI::IsMember({11, 13}));
    };

    CLI::App* design = app.add_subcommand("design-filter", "Design the FIR prototype");
    CLI::App* build = app.add_subcommand("build-model", "Build the factored MDP");
    CLI::App* solve_cmd = app.add_subcommand("solve", "Solve for the optimal policy");
    CLI::App* simulate = app.add_subcommand("simulate", "Simulate the solved policy");
    CLI::App* compare =
        app.add_subcommand("compare", "Sweep controllers across scenarios");
    CLI::App* study =
        app.add_subcommand("transition-study", "Delay modeling study");
    for (CLI::App* sub : {design, build, solve_cmd, simulate, compare, study})
        add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (design->parsed()) return cmd_design_filter(args);
        if (build->parsed()) return cmd_build_model(args);
        if (solve_cmd->parsed()) return cmd_solve(args);
        if (simulate->parsed()) return cmd_simulate(args);
        if (compare->parsed()) return cmd_compare(args);
        if (study->parsed()) return cmd_transition_study(args);
    } catch (const SolverError& e) {
        std::fprintf(stderr, "error: %s (residual %g)\n", e.what(), e.last_residual);
        return 3;
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        // Shape/encoding/design failures are config-class misuse.
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
