#pragma once

#include <cstdint>
#include <string>

#include "mrcs/mdp_model.hpp"
#include "mrcs/mdp_solver.hpp"

namespace mrcs {

enum class UseCase { Iid, Seq };
enum class ChannelSelection { UniformRandom, RoundRobin };

// Sequential-sensing traffic: one channel at a time, geometric dwell and gap
// lengths with the configured means.
struct SeqParams {
    double mean_dwell = 4.0;  // frames per requested channel, >= 1
    double mean_gap = 2.0;    // idle frames between requests, >= 0
    ChannelSelection channel_selection = ChannelSelection::UniformRandom;
};

// Everything one experiment needs: the traffic model, the machine's actual
// reconfiguration time, the reward weights, and the solver settings.
struct ScenarioConfig {
    UseCase use_case = UseCase::Iid;
    StateSpace space;
    RequestModel request;  // IID use case (also the MDP's CR chain)
    SeqParams seq;
    PowerTable power;
    double trans_frames = 1.0;  // cross-family reconfiguration time, frames
    int n_frames = 20000;
    std::uint64_t seed = 1;
    // Reward weight used when a single policy is wanted (sweeps override it).
    // 0.9 favors productivity enough that the optimal policy actually runs
    // the channelizers instead of sleeping through every request.
    double r1 = 0.9;
    SolveOptions solver;
    // When set, the simulator also streams synthetic multi-tone sample data
    // through the active channelizer each frame. Metrics do not depend on it
    // (success is a function of the configuration alone); it exists to
    // exercise the DSP kernels under the controller's reconfiguration pattern.
    bool full_fidelity = false;

    void validate() const;  // throws ConfigError
    // Model parameters for this scenario. IID scenarios use `request` as the
    // CR chain directly; SEQ scenarios get a chain moment-matched to the
    // dwell/gap episode statistics.
    MdpParams mdp_params() const;
};

// The CR chain that approximates a SEQ traffic pattern.
RequestModel fitted_request(const SeqParams& seq, int num_channels);

// Model for this scenario. For IID it is build_model(mdp_params()). For SEQ
// the request factor is replaced by the exact episode chain (geometric dwell
// on one channel, geometric gap, fresh uniform channel), which the Bernoulli
// chain cannot represent: it redraws channels independently and so invents
// multi-channel frames that never occur in SEQ traffic.
MdpModel build_scenario_model(const ScenarioConfig& cfg);

// JSON round trip. Unknown keys are rejected so typos fail loudly.
ScenarioConfig scenario_from_json_text(const std::string& text);
std::string scenario_to_json_text(const ScenarioConfig& cfg);
ScenarioConfig load_scenario(const std::string& path);  // IoError / ConfigError
void save_scenario(const ScenarioConfig& cfg, const std::string& path);

}  // namespace mrcs
