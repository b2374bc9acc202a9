#include "mrcs/scenario.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

#include "mrcs/errors.hpp"

namespace mrcs {

namespace {

using nlohmann::json;

void expect_keys(const json& j, const std::set<std::string>& allowed,
                 const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError("scenario: unknown key \"" + it.key() + "\" in " + where);
}

template <typename T>
void get_opt(const json& j, const char* key, T& out) {
    if (j.contains(key)) {
        try {
            out = j.at(key).get<T>();
        } catch (const json::exception&) {
            throw ConfigError(std::string("scenario: bad value for \"") + key + "\"");
        }
    }
}

}  // namespace

RequestModel fitted_request(const SeqParams& seq, int num_channels) {
    RequestModel r;
    // Moment match the two-regime chain to the dwell/gap episode process:
    // leave idle once per expected gap, end an episode (into a nonempty gap)
    // once per expected dwell, and size fresh draws to one channel on average.
    r.beta = 1.0 / num_channels;
    r.p_start = 1.0 / (1.0 + seq.mean_gap);
    r.p_stop = (1.0 / seq.mean_dwell) * (seq.mean_gap / (1.0 + seq.mean_gap));
    return r;
}

void ScenarioConfig::validate() const {
    space.validate();
    if (n_frames < 1) throw ConfigError("scenario: n_frames must be >= 1");
    if (!(seq.mean_dwell >= 1.0)) throw ConfigError("scenario: mean_dwell must be >= 1");
    if (!(seq.mean_gap >= 0.0)) throw ConfigError("scenario: mean_gap must be >= 0");
    mdp_params().validate();
    solver.validate();
}

MdpParams ScenarioConfig::mdp_params() const {
    MdpParams p;
    p.space = space;
    p.request = use_case == UseCase::Iid ? request : fitted_request(seq, space.num_channels);
    p.power = power;
    p.trans_frames = trans_frames;
    p.r1 = r1;
    return p;
}

MdpModel build_scenario_model(const ScenarioConfig& cfg) {
    MdpModel model = build_model(cfg.mdp_params());
    if (cfg.use_case != UseCase::Seq) return model;

    // Episode chain on the request space. Single-channel states dwell with
    // continuation probability 1 - 1/mean_dwell; an ending episode either
    // opens a gap or hands off to a fresh uniform channel. Rows for
    // multi-channel vectors (unreachable under SEQ traffic) follow the same
    // active-state rule so the matrix stays stochastic everywhere.
    const StateSpace& sp = cfg.space;
    const int ncr = sp.num_cr();
    const int nc = sp.num_channels;
    const double q = 1.0 / cfg.seq.mean_dwell;               // episode ends
    const double gap0 = 1.0 / (1.0 + cfg.seq.mean_gap);      // empty gap
    const double to_idle = q * (1.0 - gap0);
    const double to_fresh = q * gap0 / nc;
    model.cr_trans.setZero();
    for (int i = 0; i < ncr; ++i) {
        if (i == 0) {
            model.cr_trans(0, 0) = 1.0 - gap0;
            for (int ch = 0; ch < nc; ++ch) model.cr_trans(0, 1 << ch) += gap0 / nc;
        } else {
            model.cr_trans(i, i) += 1.0 - q;
            model.cr_trans(i, 0) += to_idle;
            for (int ch = 0; ch < nc; ++ch) model.cr_trans(i, 1 << ch) += to_fresh;
        }
    }
    return model;
}

ScenarioConfig scenario_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("scenario: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("scenario: top level must be an object");
    expect_keys(j,
                {"use_case", "space", "request", "seq", "power", "trans_frames",
                 "n_frames", "seed", "r1", "solver", "full_fidelity"},
                "the top level");

    ScenarioConfig c;
    if (j.contains("use_case")) {
        const std::string u = j.at("use_case").get<std::string>();
        if (u == "iid")
            c.use_case = UseCase::Iid;
        else if (u == "seq")
            c.use_case = UseCase::Seq;
        else
            throw ConfigError("scenario: use_case must be \"iid\" or \"seq\"");
    }
    if (j.contains("space")) {
        const json& s = j.at("space");
        expect_keys(s, {"num_channels", "transition_states", "num_actions"}, "space");
        get_opt(s, "num_channels", c.space.num_channels);
        get_opt(s, "transition_states", c.space.transition_states);
        get_opt(s, "num_actions", c.space.num_actions);
    }
    if (j.contains("request")) {
        const json& r = j.at("request");
        expect_keys(r, {"beta", "p_start", "p_stop"}, "request");
        get_opt(r, "beta", c.request.beta);
        get_opt(r, "p_start", c.request.p_start);
        get_opt(r, "p_stop", c.request.p_stop);
    }
    if (j.contains("seq")) {
        const json& s = j.at("seq");
        expect_keys(s, {"mean_dwell", "mean_gap", "channel_selection"}, "seq");
        get_opt(s, "mean_dwell", c.seq.mean_dwell);
        get_opt(s, "mean_gap", c.seq.mean_gap);
        if (s.contains("channel_selection")) {
            const std::string sel = s.at("channel_selection").get<std::string>();
            if (sel == "uniform_random")
                c.seq.channel_selection = ChannelSelection::UniformRandom;
            else if (sel == "round_robin")
                c.seq.channel_selection = ChannelSelection::RoundRobin;
            else
                throw ConfigError(
                    "scenario: channel_selection must be \"uniform_random\" or "
                    "\"round_robin\"");
        }
    }
    if (j.contains("power")) {
        const json& p = j.at("power");
        expect_keys(p, {"sleep_w", "dcm_w", "dftfb_w", "transition_w"}, "power");
        get_opt(p, "sleep_w", c.power.sleep);
        get_opt(p, "dcm_w", c.power.dcm);
        get_opt(p, "dftfb_w", c.power.dftfb);
        get_opt(p, "transition_w", c.power.transition);
    }
    get_opt(j, "trans_frames", c.trans_frames);
    get_opt(j, "n_frames", c.n_frames);
    get_opt(j, "seed", c.seed);
    get_opt(j, "r1", c.r1);
    get_opt(j, "full_fidelity", c.full_fidelity);
    if (j.contains("solver")) {
        const json& s = j.at("solver");
        expect_keys(s, {"gamma", "epsilon", "max_iterations"}, "solver");
        get_opt(s, "gamma", c.solver.gamma);
        get_opt(s, "epsilon", c.solver.epsilon);
        get_opt(s, "max_iterations", c.solver.max_iterations);
    }
    c.validate();
    return c;
}

std::string scenario_to_json_text(const ScenarioConfig& c) {
    json j;
    j["use_case"] = c.use_case == UseCase::Iid ? "iid" : "seq";
    j["space"] = {{"num_channels", c.space.num_channels},
                  {"transition_states", c.space.transition_states},
                  {"num_actions", c.space.num_actions}};
    j["request"] = {{"beta", c.request.beta},
                    {"p_start", c.request.p_start},
                    {"p_stop", c.request.p_stop}};
    j["seq"] = {{"mean_dwell", c.seq.mean_dwell},
                {"mean_gap", c.seq.mean_gap},
                {"channel_selection",
                 c.seq.channel_selection == ChannelSelection::UniformRandom
                     ? "uniform_random"
                     : "round_robin"}};
    j["power"] = {{"sleep_w", c.power.sleep},
                  {"dcm_w", c.power.dcm},
                  {"dftfb_w", c.power.dftfb},
                  {"transition_w", c.power.transition}};
    j["trans_frames"] = c.trans_frames;
    j["n_frames"] = c.n_frames;
    j["seed"] = c.seed;
    j["r1"] = c.r1;
    j["full_fidelity"] = c.full_fidelity;
    j["solver"] = {{"gamma", c.solver.gamma},
                   {"epsilon", c.solver.epsilon},
                   {"max_iterations", c.solver.max_iterations}};
    return j.dump(1, '\t') + "\n";
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("scenario: cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("scenario: read failed for " + path);
    return scenario_from_json_text(text);
}

void save_scenario(const ScenarioConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("scenario: cannot write " + path);
    out << scenario_to_json_text(cfg);
    if (!out) throw IoError("scenario: write failed for " + path);
}

}  // namespace mrcs
